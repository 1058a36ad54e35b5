#include "twobridge/interval.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

namespace twobridge {

namespace {

// Split k = s^2 * k' with k' squarefree; returns (s, k').
std::pair<i64, i64> extract_square(i64 k) {
    i64 s = 1;
    for (i64 f = 2; f * f <= k; ++f) {
        while (k % (f * f) == 0) {
            k /= f * f;
            s *= f;
        }
    }
    return {s, k};
}

int sign_of(const Fraction& f) {
    if (f.num() > 0) return 1;
    if (f.num() < 0) return -1;
    return 0;
}

// Compare t vs b*sqrt(k) exactly (b != 0, k > 1 non-square, t rational).
int compare_rational_to_surd(const Fraction& t, const Fraction& b, i64 k) {
    int st = sign_of(t), sb = sign_of(b);
    if (st != sb) return st < sb ? -1 : 1;
    if (st == 0) return sb == 0 ? 0 : (sb > 0 ? -1 : 1);
    // Same nonzero sign: compare t^2 vs b^2 k, flipping for negatives.
    Fraction t2 = mul(t, t);
    Fraction bk = mul(mul(b, b), Fraction::make(k, 1));
    int c = t2 == bk ? 0 : (t2 < bk ? -1 : 1);
    return st > 0 ? c : -c;
}

}  // namespace

Bound Bound::surd(const Fraction& a, const Fraction& b, i64 k) {
    if (k <= 0) throw DomainError("surd radicand must be positive");
    if (b.is_zero()) return rational(a);
    auto [s, kk] = extract_square(k);
    if (kk == 1) return rational(add(a, mul(b, Fraction::make(s, 1))));
    return {Kind::Finite, a, mul(b, Fraction::make(s, 1)), kk};
}

double Bound::approx() const {
    switch (kind) {
        case Kind::NegInf: return -std::numeric_limits<double>::infinity();
        case Kind::PosInf: return std::numeric_limits<double>::infinity();
        case Kind::Finite:
            return static_cast<double>(a.num()) / a.den() +
                   static_cast<double>(b.num()) / b.den() * std::sqrt(static_cast<double>(k));
    }
    return 0;
}

int Bound::compare(const Fraction& value) const {
    if (kind == Kind::NegInf) return -1;
    if (kind == Kind::PosInf) return 1;
    // a + b sqrt(k) vs value  <=>  b sqrt(k) vs value - a.
    Fraction t = sub(value, a);
    return -compare_rational_to_surd(t, b, k);
}

std::string Bound::str() const {
    if (kind == Kind::NegInf) return "-inf";
    if (kind == Kind::PosInf) return "inf";
    if (b.is_zero()) return a.str();
    std::string out = a.is_zero() ? "" : a.str();
    if (b == Fraction::make(1, 1))
        out += out.empty() ? "" : "+";
    else if (b == Fraction::make(-1, 1))
        out += "-";
    else
        out += (out.empty() || b.num() < 0 ? b.str() + "*" : "+" + b.str() + "*");
    out += "sqrt(" + std::to_string(k) + ")";
    return out;
}

bool SlopeInterval::contains(const Fraction& slope) const {
    if (slope.is_infinite()) return false;
    int cl = lo.compare(slope);
    if (cl > 0 || (cl == 0 && lo_open)) return false;
    int ch = hi.compare(slope);
    if (ch < 0 || (ch == 0 && hi_open)) return false;
    return true;
}

std::string SlopeInterval::str() const {
    std::string out = lo_open ? "(" : "[";
    out += lo.str();
    out += ",";
    out += hi.str();
    out += hi_open ? ")" : "]";
    return out;
}

SlopeInterval surgery_interval(const RobertsData& d) {
    if (d.p1 < 0 || d.p2 < 0 || d.n1 < 0 || d.n2 < 0)
        throw DomainError("arc counts must be non-negative");
    const i64 A = d.p1 - d.n1;
    const i64 B = d.p2 - d.n2;
    const Fraction r = d.r;
    SlopeInterval out;

    if (A == 0 && B == 0) {
        out.lo = out.hi = Bound::rational(r);
        out.lo_open = out.hi_open = false;
        return out;
    }
    if (B == 0) {
        // Strictly monotone from r to r + A, neither end attained.
        Fraction ra = add(r, Fraction::make(A, 1));
        out.lo = Bound::rational(A > 0 ? r : ra);
        out.hi = Bound::rational(A > 0 ? ra : r);
        return out;
    }
    if (static_cast<__int128>(A) * B >= 0 || std::llabs(A) <= std::llabs(B)) {
        // Monotone in the direction of B: limits r and sign(B) * inf.
        if (B > 0) {
            out.lo = Bound::rational(r);
            out.hi = Bound::pos_inf();
        } else {
            out.lo = Bound::neg_inf();
            out.hi = Bound::rational(r);
        }
        return out;
    }
    // Opposite signs with |A| > |B|: interior extremum at x = sqrt(-A/B) - 1,
    // value r + A - B -+ 2 sqrt(-A B), attained.
    Fraction base = add(r, Fraction::make(A - B, 1));
    i64 radicand = -A * B;
    if (A > 0) {
        out.lo = Bound::neg_inf();
        out.hi = Bound::surd(base, Fraction::make(-2, 1), radicand);
        out.hi_open = false;
    } else {
        out.lo = Bound::surd(base, Fraction::make(2, 1), radicand);
        out.lo_open = false;
        out.hi = Bound::pos_inf();
    }
    return out;
}

const char* to_string(IntervalSource s) {
    switch (s) {
        case IntervalSource::KleinBottleInterval: return "klein-bottle-interval";
        case IntervalSource::SeifertSurfaceInterval: return "seifert-surface-interval";
    }
    return "?";
}

std::vector<TwistInterval> twist_knot_intervals(i64 n) {
    if (n == 0 || n == 1) throw BadTwist();
    std::vector<TwistInterval> out;
    // Punctured Klein bottle: boundary slope -4, one P1 and one N2 arc.
    TwistInterval klein;
    klein.data = {Fraction::make(-4, 1), 1, 0, 0, 1};
    klein.interval = surgery_interval(klein.data);
    klein.source = IntervalSource::KleinBottleInterval;
    klein.cusp_count = std::llabs(2 * n - 1);  // cusp along the longitude, >= 3
    out.push_back(klein);
    if (std::llabs(n) > 2) {
        // Genus-one Seifert surface: boundary slope 0, one P2 and one N1 arc.
        TwistInterval seifert;
        seifert.data = {Fraction::make(0, 1), 0, 1, 1, 0};
        seifert.interval = surgery_interval(seifert.data);
        seifert.source = IntervalSource::SeifertSurfaceInterval;
        seifert.cusp_count = std::llabs(2 * n);  // band with 2n twists
        out.push_back(seifert);
    }
    return out;
}

}  // namespace twobridge
