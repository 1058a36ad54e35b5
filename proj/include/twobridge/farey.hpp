#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twobridge/errors.hpp"

namespace twobridge {

using i64 = long long;

// Parity class of a reduced fraction by (numerator, denominator) parity.
// A reduced fraction never has both parts even, so three classes suffice.
enum class Parity { OddOdd, OddEven, EvenOdd };

const char* to_string(Parity p);

/// Reduced rational p/q with q >= 0; q == 0 only for the single value
/// infinity, stored as 1/0.  Values are immutable.
class Fraction {
public:
    Fraction() = default;

    // Reduces and normalizes the sign into the numerator.
    static Fraction make(i64 num, i64 den);
    static Fraction infinity() { return Fraction(1, 0); }

    // Accepts "p/q", a bare integer, or "inf".
    static Fraction parse(const std::string& text);

    i64 num() const { return num_; }
    i64 den() const { return den_; }

    bool is_infinite() const { return den_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0 && den_ == 1; }

    Parity parity() const;

    // Slope map used when a knot is replaced by its mirror image.
    Fraction negated() const;

    std::string str() const;

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }
    // Exact order; infinity compares greater than every finite value.
    friend bool operator<(const Fraction& a, const Fraction& b);

private:
    Fraction(i64 n, i64 d) : num_(n), den_(d) {}
    i64 num_ = 0;
    i64 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

// Exact arithmetic; infinity operands are an error by design.
Fraction add(const Fraction& a, const Fraction& b);
Fraction sub(const Fraction& a, const Fraction& b);
Fraction mul(const Fraction& a, const Fraction& b);

/// r in (0, q) with p*r = 1 mod q.  Throws NotCoprime.
i64 mod_inverse(i64 p, i64 q);

/// Nonempty sequence of nonzero integer terms b_1..b_k denoting the nested
/// fraction 1/(b_1 - 1/(b_2 - ... - 1/b_k)).
class Expansion {
public:
    explicit Expansion(std::vector<i64> terms);
    static Expansion parse(const std::string& text);

    const std::vector<i64>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool all_even() const;
    bool all_two() const;  // every term equals +2
    bool has_negative() const;

    Expansion swapped() const;  // [b1,b2] -> [b2,b1]; defined for length 2

    std::string str() const;

    friend bool operator==(const Expansion& a, const Expansion& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const Expansion& a, const Expansion& b) { return a.terms_ < b.terms_; }

private:
    std::vector<i64> terms_;
};

std::ostream& operator<<(std::ostream& os, const Expansion& e);

/// Exact value of the nested fraction.  Throws DegenerateExpansion when an
/// intermediate continuant vanishes (e.g. [1,1]).
Fraction evaluate(const Expansion& e);

/// All-even expansion of p/q (q odd, p even, 0 < p < q) with first term >= 2,
/// found greedily: each step takes the unique even integer within distance 1
/// of the remaining reciprocal.  Throws BadParity on wrong parity.
Expansion even_expansion(const Fraction& f);

enum class KnotFamily {
    Trivial,         // q == 1
    TorusKnot,       // p = +-1 mod q: the (2,q) torus knot
    TwistKnot,       // [2n, +-2] with |n| > 1
    TwoTermGeneric,  // [b1, b2] with |b1|, |b2| > 2
    FigureEight,     // 2/5
    Generic          // no length-two expansion
};

const char* to_string(KnotFamily f);

/// Canonical description of a two-bridge knot: p even, 1 < p < q, except the
/// trivial and torus families which short-circuit.  `mirrored` records that
/// the input was replaced by its mirror image; callers must then map every
/// slope g to -g.
struct KnotClass {
    i64 p = 0;
    i64 q = 0;
    bool mirrored = false;
    KnotFamily family = KnotFamily::Generic;
    i64 inverse_p = 0;   // p^{-1} mod q for the canonical p (0 if undefined)
    i64 twist_n = 0;     // TwistKnot / FigureEight: the n of [2n, s*2]
    int twist_sign = 0;  // TwistKnot / FigureEight: the s of [2n, s*2]
    i64 b1 = 0, b2 = 0;  // TwoTermGeneric form with b2 even
};

/// Canonicalize a knot fraction: reduce mod q, then mirror once if the
/// numerator is odd.  Throws IsLink when q is even.
KnotClass normalize_knot(const Fraction& f);

/// Every length-two expansion [b1,b2] whose value normalizes to the same
/// canonical (p, q) without a mirror move.  Sorted; may be empty.
std::vector<Expansion> two_term_forms(const KnotClass& k);

}  // namespace twobridge
