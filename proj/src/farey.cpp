#include "twobridge/farey.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace twobridge {

namespace {

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
}

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
    return r;
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// Floor-style remainder in [0, q).
i64 mod_floor(i64 a, i64 q) {
    i64 r = a % q;
    if (r < 0) r += q;
    return r;
}

}  // namespace

const char* to_string(Parity p) {
    switch (p) {
        case Parity::OddOdd: return "o/o";
        case Parity::OddEven: return "o/e";
        case Parity::EvenOdd: return "e/o";
    }
    return "?";
}

Fraction Fraction::make(i64 num, i64 den) {
    if (num == 0 && den == 0) throw DomainError("0/0 is not a fraction");
    if (den < 0) {
        num = checked_sub(0, num);
        den = checked_sub(0, den);
    }
    if (den == 0) return Fraction(1, 0);
    i64 g = gcd64(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction(num, den);
}

Fraction Fraction::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "inf" || s == "+inf" || s == "1/0") return infinity();
    auto whole = [&](const std::string& part) {
        std::size_t used = 0;
        i64 v = std::stoll(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
        return v;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return make(whole(s), 1);
        return make(whole(s.substr(0, slash)), whole(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ParseError("cannot parse fraction: '" + text + "'");
    }
}

Parity Fraction::parity() const {
    bool num_odd = (num_ % 2) != 0;
    bool den_odd = (den_ % 2) != 0;
    if (num_odd && den_odd) return Parity::OddOdd;
    if (num_odd) return Parity::OddEven;
    if (den_odd) return Parity::EvenOdd;
    throw InternalInconsistency("fraction not reduced: both parts even");
}

Fraction Fraction::negated() const {
    if (is_infinite()) return *this;
    return Fraction(-num_, den_);
}

std::string Fraction::str() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const Fraction& a, const Fraction& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

namespace {

void require_finite(const Fraction& a, const Fraction& b) {
    if (a.is_infinite() || b.is_infinite())
        throw DomainError("arithmetic on the infinite fraction is not defined");
}

}  // namespace

Fraction add(const Fraction& a, const Fraction& b) {
    require_finite(a, b);
    return Fraction::make(checked_add(checked_mul(a.num(), b.den()), checked_mul(b.num(), a.den())),
                          checked_mul(a.den(), b.den()));
}

Fraction sub(const Fraction& a, const Fraction& b) { return add(a, b.negated()); }

Fraction mul(const Fraction& a, const Fraction& b) {
    require_finite(a, b);
    return Fraction::make(checked_mul(a.num(), b.num()), checked_mul(a.den(), b.den()));
}

i64 mod_inverse(i64 p, i64 q) {
    if (q < 2) throw DomainError("modulus must be at least 2");
    i64 a = mod_floor(p, q);
    if (std::gcd(a, q) != 1) throw NotCoprime();
    // Extended Euclid on (a, q).
    i64 r0 = a, r1 = q, s0 = 1, s1 = 0;
    while (r1 != 0) {
        i64 t = r0 / r1;
        i64 r2 = r0 - t * r1;
        i64 s2 = s0 - t * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    return mod_floor(s0, q);
}

Expansion::Expansion(std::vector<i64> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw DomainError("expansion must have at least one term");
    for (i64 t : terms_)
        if (t == 0) throw DomainError("expansion terms must be nonzero");
}

Expansion Expansion::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 3 || s.front() != '[' || s.back() != ']')
        throw ParseError("cannot parse expansion: '" + text + "'");
    std::vector<i64> terms;
    std::stringstream body(s.substr(1, s.size() - 2));
    std::string item;
    while (std::getline(body, item, ',')) {
        try {
            std::size_t used = 0;
            terms.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ParseError("cannot parse expansion term: '" + item + "'");
        }
    }
    if (terms.empty()) throw ParseError("expansion has no terms: '" + text + "'");
    return Expansion(std::move(terms));
}

bool Expansion::all_even() const {
    return std::all_of(terms_.begin(), terms_.end(), [](i64 t) { return t % 2 == 0; });
}

bool Expansion::all_two() const {
    return std::all_of(terms_.begin(), terms_.end(), [](i64 t) { return t == 2; });
}

bool Expansion::has_negative() const {
    return std::any_of(terms_.begin(), terms_.end(), [](i64 t) { return t < 0; });
}

Expansion Expansion::swapped() const {
    if (terms_.size() != 2) throw DomainError("swapped() requires a length-two expansion");
    return Expansion({terms_[1], terms_[0]});
}

std::string Expansion::str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(terms_[i]);
    }
    return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Expansion& e) { return os << e.str(); }

Fraction evaluate(const Expansion& e) {
    const auto& t = e.terms();
    // Right-to-left: value of [b_i,...,b_k] as n/d with d possibly negative.
    i64 n = 1, d = t.back();
    for (std::size_t i = t.size() - 1; i-- > 0;) {
        i64 nd = checked_sub(checked_mul(t[i], d), n);
        n = d;
        d = nd;
        if (d == 0) throw DegenerateExpansion();
    }
    return Fraction::make(n, d);
}

Expansion even_expansion(const Fraction& f) {
    if (f.is_infinite() || f.den() % 2 == 0 || f.num() % 2 != 0)
        throw BadParity("even expansion needs p even and q odd");
    if (f.num() <= 0 || f.num() >= f.den()) throw BadParity("even expansion needs 0 < p < q");
    std::vector<i64> terms;
    // Represent the current tail value as n/d; each step peels the unique
    // even integer within distance one of d/n.
    i64 n = f.num(), d = f.den();
    while (true) {
        if (d % n == 0) {
            // Exact even quotient terminates the expansion.
            i64 a = d / n;
            if (a % 2 != 0) throw InternalInconsistency("odd exact quotient in even expansion");
            terms.push_back(a);
            break;
        }
        // The unique even integer within distance one of d/n, found by an
        // exact scan around the truncated quotient.
        i64 base = d / n;
        base -= base % 2;
        i64 a = 0;
        bool found = false;
        for (i64 cand = base - 4; cand <= base + 4; cand += 2) {
            i64 diff = checked_sub(checked_mul(cand, n), d);
            if (std::llabs(diff) < std::llabs(n)) {
                a = cand;
                found = true;
                break;
            }
        }
        if (!found) throw InternalInconsistency("no even term candidate found");
        terms.push_back(a);
        i64 nn = checked_sub(checked_mul(a, n), d);
        d = n;
        n = nn;
        if (d < 0) {
            d = -d;
            n = -n;
        }
    }
    Expansion result{std::move(terms)};
    if (evaluate(result) != f) throw InternalInconsistency("even expansion failed to round-trip");
    return result;
}

const char* to_string(KnotFamily f) {
    switch (f) {
        case KnotFamily::Trivial: return "trivial";
        case KnotFamily::TorusKnot: return "torus-knot";
        case KnotFamily::TwistKnot: return "twist-knot";
        case KnotFamily::TwoTermGeneric: return "two-term-generic";
        case KnotFamily::FigureEight: return "figure-eight";
        case KnotFamily::Generic: return "generic";
    }
    return "?";
}

namespace {

// Length-two forms whose value has numerator = p mod q with positive
// denominator q; b2 is forced up to the four divisibility cases below
// because [b1,b2] = b2/(b1*b2 - 1) is already reduced.
std::vector<Expansion> strict_two_term_forms(i64 p, i64 q) {
    std::vector<Expansion> forms;
    auto consider = [&](i64 b2, i64 product) {
        if (b2 == 0) return;
        if (product % b2 != 0) return;
        i64 b1 = product / b2;
        if (b1 == 0) return;
        Expansion e({b1, b2});
        Fraction v = evaluate(e);
        if (v.den() != q) return;
        if (mod_floor(v.num(), q) != p) return;
        forms.push_back(std::move(e));
    };
    // b1*b2 = q+1 with b2 = p mod q, and b1*b2 = 1-q with b2 = -p mod q.
    consider(p, q + 1);
    consider(p - q, q + 1);
    consider(-p, 1 - q);
    consider(q - p, 1 - q);
    std::sort(forms.begin(), forms.end());
    forms.erase(std::unique(forms.begin(), forms.end(),
                            [](const Expansion& a, const Expansion& b) { return a.terms() == b.terms(); }),
                forms.end());
    return forms;
}

// Twist parameters (n, s) for the knot of a pool form [x, +-2], using the
// identity [b, +-2] = [b -+ 1, -+2] to make the first term even.
struct TwistParams {
    i64 n;
    int s;
    bool operator<(const TwistParams& o) const { return n < o.n || (n == o.n && s < o.s); }
};

void detect_family(KnotClass& k) {
    if (k.p == 2 && k.q == 5) {
        k.family = KnotFamily::FigureEight;
        k.twist_n = 1;
        k.twist_sign = -1;
        return;
    }
    std::vector<Expansion> pool = strict_two_term_forms(k.p, k.q);
    {
        // Swapped forms describe the same knot through p^{-1}; the pattern
        // match below needs both orderings.
        std::vector<Expansion> swaps;
        swaps.reserve(pool.size());
        for (const auto& e : pool) swaps.push_back(e.swapped());
        pool.insert(pool.end(), swaps.begin(), swaps.end());
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    }
    if (pool.empty()) {
        k.family = KnotFamily::Generic;
        return;
    }

    std::set<TwistParams> twists;
    std::set<std::pair<i64, i64>> generics;  // (b1, b2) with b2 even
    for (const auto& e : pool) {
        i64 b1 = e.terms()[0], b2 = e.terms()[1];
        if (b2 == 2 || b2 == -2) {
            i64 x = b1;
            int s = b2 > 0 ? 1 : -1;
            if (x % 2 != 0) {
                // [x, 2] = [x-1, -2] and [x, -2] = [x+1, 2].
                x = s > 0 ? x - 1 : x + 1;
                s = -s;
            }
            twists.insert({x / 2, s});
        } else if (b1 != 2 && b1 != -2) {
            if (std::llabs(b1) <= 2 || std::llabs(b2) <= 2)
                throw InternalInconsistency("unexpected small term in two-term form");
            if (b2 % 2 == 0) generics.insert({b1, b2});
        }
        // Forms with b1 = +-2 and |b2| > 2 are the swaps of twist forms and
        // are covered by their partner.
    }

    if (!twists.empty() && !generics.empty())
        throw InternalInconsistency("knot matched both twist and generic two-term patterns");

    if (!twists.empty()) {
        if (twists.size() != 1) throw InternalInconsistency("ambiguous twist-knot parameters");
        TwistParams t = *twists.begin();
        if (t.n == 0 || t.n == 1 || t.n == -1)
            throw InternalInconsistency("degenerate twist parameters for a canonical knot");
        k.family = KnotFamily::TwistKnot;
        k.twist_n = t.n;
        k.twist_sign = t.s;
        return;
    }

    // All generic forms must agree on the single exceptional slope.
    std::set<i64> slopes;
    for (const auto& [b1, b2] : generics) slopes.insert(b1 % 2 == 0 ? 0 : 2 * b2);
    if (generics.empty() || slopes.size() != 1)
        throw InternalInconsistency("two-term forms disagree on the exceptional slope");
    k.family = KnotFamily::TwoTermGeneric;
    k.b1 = generics.begin()->first;
    k.b2 = generics.begin()->second;
}

}  // namespace

KnotClass normalize_knot(const Fraction& f) {
    if (f.is_infinite() || f.den() % 2 == 0) throw IsLink();
    KnotClass k;
    k.q = f.den();
    if (k.q == 1) {
        k.family = KnotFamily::Trivial;
        k.p = 0;
        return k;
    }
    k.p = mod_floor(f.num(), k.q);
    if (k.p == 1 || k.p == k.q - 1) {
        k.mirrored = (k.p == k.q - 1);
        k.p = 1;
        k.family = KnotFamily::TorusKnot;
        k.inverse_p = 1;
        return k;
    }
    if (k.p % 2 != 0) {
        k.p = k.q - k.p;
        k.mirrored = true;
    }
    k.inverse_p = mod_inverse(k.p, k.q);
    detect_family(k);
    return k;
}

std::vector<Expansion> two_term_forms(const KnotClass& k) {
    if (k.family == KnotFamily::Trivial || k.family == KnotFamily::TorusKnot) return {};
    return strict_two_term_forms(k.p, k.q);
}

}  // namespace twobridge
