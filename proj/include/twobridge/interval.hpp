#pragma once

#include <string>
#include <vector>

#include "twobridge/farey.hpp"

namespace twobridge {

/// Branched-surface filling data: the slope r of the surface boundary on the
/// peripheral torus and the counts of the four boundary arc types.  P-types
/// contribute positively to carried slopes under the right-hand-rule framing.
struct RobertsData {
    Fraction r;
    i64 p1 = 0, p2 = 0, n1 = 0, n2 = 0;
};

/// Exact interval endpoint: -inf, +inf, or a + b*sqrt(k) with a, b rational
/// and k a positive non-square integer (b = 0 for plain rationals).
struct Bound {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Fraction a;
    Fraction b;
    i64 k = 1;

    static Bound neg_inf() { return {Kind::NegInf, {}, {}, 1}; }
    static Bound pos_inf() { return {Kind::PosInf, {}, {}, 1}; }
    static Bound rational(const Fraction& v) { return {Kind::Finite, v, Fraction::make(0, 1), 1}; }
    static Bound surd(const Fraction& a, const Fraction& b, i64 k);

    bool is_rational() const { return kind == Kind::Finite && b.is_zero(); }
    double approx() const;
    // -1, 0, +1 comparison against an exact rational; infinite bounds never tie.
    int compare(const Fraction& value) const;
    std::string str() const;

    friend bool operator==(const Bound& x, const Bound& y) {
        return x.kind == y.kind && (x.kind != Kind::Finite || (x.a == y.a && x.b == y.b && x.k == y.k));
    }
};

/// Interval of slopes with exact endpoints and explicit openness.
struct SlopeInterval {
    Bound lo = Bound::neg_inf();
    Bound hi = Bound::pos_inf();
    bool lo_open = true;
    bool hi_open = true;

    bool contains(const Fraction& slope) const;
    std::string str() const;

    friend bool operator==(const SlopeInterval& x, const SlopeInterval& y) {
        return x.lo == y.lo && x.hi == y.hi && x.lo_open == y.lo_open && x.hi_open == y.hi_open;
    }
};

/// Exact image of f(x) = r + (p1-n1) x/(x+1) + (p2-n2) x over x in (0, inf).
/// Monotone cases give open intervals with endpoints among {r, r+A, +-inf};
/// when (p1-n1)(p2-n2) < 0 with |p1-n1| > |p2-n2| the interior extremum
/// r + A - B -+ 2 sqrt(-AB) is attained and closes that end.
SlopeInterval surgery_interval(const RobertsData& d);

enum class IntervalSource {
    KleinBottleInterval,    // punctured Klein bottle spanning surface, slope -4
    SeifertSurfaceInterval  // genus-one Seifert surface, slope 0
};

const char* to_string(IntervalSource s);

/// One excluded-slope interval for the twist knot [2n, 2], with the cusp
/// count that obstructs the complementary I-bundle.
struct TwistInterval {
    SlopeInterval interval;
    IntervalSource source;
    i64 cusp_count = 0;
    RobertsData data;
};

/// Surgery intervals for the twist knot [2n, 2]: always the Klein-bottle
/// interval (-inf, -4); additionally the Seifert-surface interval (0, inf)
/// when |n| > 2.  Throws BadTwist for n in {0, 1}.
std::vector<TwistInterval> twist_knot_intervals(i64 n);

}  // namespace twobridge
