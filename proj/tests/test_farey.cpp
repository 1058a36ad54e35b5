#include "twobridge/farey.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace twobridge;

namespace {

Fraction fr(i64 n, i64 d) { return Fraction::make(n, d); }

// Independent brute-force oracle for two_term_forms: scan every b2 dividing
// q+1 or q-1 in magnitude and check the value class directly.
std::vector<Expansion> brute_two_term_forms(i64 p, i64 q) {
    std::vector<Expansion> out;
    for (i64 b2 = -(q + 1); b2 <= q + 1; ++b2) {
        if (b2 == 0) continue;
        for (i64 product : {q + 1, 1 - q}) {
            if (product % b2 != 0) continue;
            i64 b1 = product / b2;
            if (b1 == 0 || b1 * b2 == 1) continue;
            Expansion e({b1, b2});
            Fraction v = evaluate(e);
            if (v.den() != q) continue;
            i64 r = v.num() % q;
            if (r < 0) r += q;
            if (r == p) out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("fraction basics") {
    CHECK(fr(4, 6) == fr(2, 3));
    CHECK(fr(-4, 6) == fr(-2, 3));
    CHECK(fr(4, -6) == fr(-2, 3));
    CHECK(fr(3, 0) == Fraction::infinity());
    CHECK(fr(0, 5).is_zero());
    CHECK(fr(7, 1).is_integer());
    CHECK(fr(1, 2) < fr(2, 3));
    CHECK(fr(-1, 2) < fr(0, 1));
    CHECK(fr(5, 1) < Fraction::infinity());
    CHECK(fr(2, 5).str() == "2/5");
    CHECK(fr(-8, 1).str() == "-8");
    CHECK(Fraction::infinity().str() == "inf");
    CHECK(Fraction::parse(" -3 / 5 ") == fr(-3, 5));
    CHECK(Fraction::parse("inf").is_infinite());
    CHECK(Fraction::parse("7") == fr(7, 1));
    CHECK_THROWS_AS(Fraction::parse("x/y"), ParseError);
    CHECK_THROWS_AS(Fraction::parse("3/4junk"), ParseError);
    CHECK_THROWS_AS(Fraction::parse(""), ParseError);
    CHECK_THROWS_AS(add(Fraction::infinity(), fr(1, 2)), DomainError);
}

TEST_CASE("parity classes") {
    CHECK(Fraction::infinity().parity() == Parity::OddEven);
    CHECK(fr(0, 1).parity() == Parity::EvenOdd);
    CHECK(fr(1, 1).parity() == Parity::OddOdd);
    CHECK(fr(2, 5).parity() == Parity::EvenOdd);
    CHECK(fr(1, 2).parity() == Parity::OddEven);
    // Stable under negation of the numerator.
    for (i64 n = -9; n <= 9; ++n)
        for (i64 d = 1; d <= 9; ++d) {
            if (std::gcd(n < 0 ? -n : n, d) != 1) continue;
            CHECK(fr(n, d).parity() == fr(-n, d).parity());
        }
}

TEST_CASE("expansion evaluation") {
    CHECK(evaluate(Expansion({6})) == fr(1, 6));
    CHECK(evaluate(Expansion({2, -2})) == fr(2, 5));
    CHECK(evaluate(Expansion({2, 2, -2})) == fr(5, 8));
    CHECK(evaluate(Expansion({2, -2, -4, 2})) == fr(16, 41));
    CHECK(evaluate(Expansion({2, 2, 2, 2})) == fr(4, 5));
    CHECK(evaluate(Expansion({3, 4})) == fr(4, 11));
    CHECK_THROWS_AS(evaluate(Expansion({1, 1})), DegenerateExpansion);
    CHECK_THROWS_AS(evaluate(Expansion({2, 1, 2})), DegenerateExpansion);
    CHECK_THROWS_AS(Expansion({2, 0, 2}), DomainError);
    CHECK_THROWS_AS(Expansion(std::vector<i64>{}), DomainError);
    CHECK(Expansion::parse("[2, -2, -4, 2]").terms() == std::vector<i64>{2, -2, -4, 2});
    CHECK(Expansion({2, -2}).str() == "[2,-2]");
}

TEST_CASE("evaluate([b1,b2]) equals b2/(b1*b2-1)") {
    for (i64 b1 = -7; b1 <= 7; ++b1)
        for (i64 b2 = -7; b2 <= 7; ++b2) {
            if (b1 == 0 || b2 == 0 || b1 * b2 == 1) continue;
            CHECK(evaluate(Expansion({b1, b2})) == fr(b2, b1 * b2 - 1));
        }
}

TEST_CASE("even expansion") {
    CHECK(even_expansion(fr(2, 7)).terms() == std::vector<i64>{4, 2});
    CHECK(even_expansion(fr(4, 11)).terms() == std::vector<i64>{2, -2, -2, -2});
    CHECK(even_expansion(fr(4, 5)).terms() == std::vector<i64>{2, 2, 2, 2});
    CHECK(even_expansion(fr(16, 41)).terms() == std::vector<i64>{2, -2, -4, 2});
    CHECK_THROWS_AS(even_expansion(fr(3, 7)), BadParity);
    CHECK_THROWS_AS(even_expansion(fr(2, 8)), BadParity);
    // Large inputs stay exact.
    {
        Fraction big = fr(2'000'000'000'000'000'002LL, 4'999'999'999'999'999'999LL);
        CHECK(evaluate(even_expansion(big)) == big);
    }
    // First term is at least 2 and every term is even and nonzero.
    for (i64 q = 3; q <= 99; q += 2)
        for (i64 p = 2; p < q; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            Expansion e = even_expansion(fr(p, q));
            CHECK(e.terms().front() >= 2);
            CHECK(e.all_even());
        }
}

TEST_CASE("round trip evaluate(even_expansion) up to q = 500") {
    for (i64 q = 3; q <= 500; q += 2)
        for (i64 p = 2; p < q; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            REQUIRE(evaluate(even_expansion(fr(p, q))) == fr(p, q));
        }
}

TEST_CASE("mod inverse") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(16, 41) == 18);
    CHECK(mod_inverse(4, 15) == 4);
    CHECK(mod_inverse(-2, 5) == 2);  // (-2)*2 = -4 = 1 mod 5
    CHECK_THROWS_AS(mod_inverse(6, 9), NotCoprime);
    std::mt19937 rng(7);
    for (int i = 0; i < 500; ++i) {
        i64 q = 2 + rng() % 997;
        i64 p = 1 + rng() % (q - 1);
        if (std::gcd(p, q) != 1) continue;
        i64 r = mod_inverse(p, q);
        CHECK(r > 0);
        CHECK(r < q);
        CHECK((p * r) % q == 1);
    }
}

TEST_CASE("knot normalization") {
    KnotClass fig8 = normalize_knot(fr(2, 5));
    CHECK(fig8.p == 2);
    CHECK(fig8.q == 5);
    CHECK_FALSE(fig8.mirrored);
    CHECK(fig8.family == KnotFamily::FigureEight);

    KnotClass m = normalize_knot(fr(3, 5));
    CHECK(m.p == 2);
    CHECK(m.q == 5);
    CHECK(m.mirrored);
    CHECK(m.family == KnotFamily::FigureEight);

    KnotClass t = normalize_knot(fr(1, 3));
    CHECK(t.family == KnotFamily::TorusKnot);
    CHECK(t.q == 3);
    CHECK_FALSE(t.mirrored);
    CHECK(normalize_knot(fr(2, 3)).family == KnotFamily::TorusKnot);
    CHECK(normalize_knot(fr(2, 3)).mirrored);
    CHECK(normalize_knot(fr(4, 5)).family == KnotFamily::TorusKnot);

    CHECK(normalize_knot(fr(5, 1)).family == KnotFamily::Trivial);
    CHECK_THROWS_AS(normalize_knot(fr(1, 4)), IsLink);
    CHECK_THROWS_AS(normalize_knot(Fraction::infinity()), IsLink);

    // Negative numerators reduce mod q first.
    KnotClass neg = normalize_knot(fr(-2, 5));
    CHECK(neg.p == 2);
    CHECK(neg.mirrored);

    CHECK(normalize_knot(fr(2, 7)).family == KnotFamily::TwistKnot);
    CHECK(normalize_knot(fr(2, 7)).twist_n == 2);
    CHECK(normalize_knot(fr(2, 7)).twist_sign == 1);
    CHECK(normalize_knot(fr(2, 9)).twist_n == 2);
    CHECK(normalize_knot(fr(2, 9)).twist_sign == -1);
    CHECK(normalize_knot(fr(4, 9)).twist_n == -2);
    CHECK(normalize_knot(fr(4, 9)).twist_sign == 1);

    KnotClass g = normalize_knot(fr(4, 11));
    CHECK(g.family == KnotFamily::TwoTermGeneric);
    CHECK(g.b1 == 3);
    CHECK(g.b2 == 4);
    KnotClass both_even = normalize_knot(fr(4, 15));
    CHECK(both_even.family == KnotFamily::TwoTermGeneric);
    CHECK(both_even.b1 == 4);
    CHECK(both_even.b2 == 4);

    CHECK(normalize_knot(fr(16, 41)).family == KnotFamily::Generic);
}

TEST_CASE("two-term forms of known knots") {
    auto forms = [](i64 p, i64 q) {
        std::vector<std::vector<i64>> out;
        for (const auto& e : two_term_forms(normalize_knot(fr(p, q)))) out.push_back(e.terms());
        return out;
    };
    CHECK(forms(2, 7) == std::vector<std::vector<i64>>{{3, -2}, {4, 2}});
    CHECK(forms(4, 11) == std::vector<std::vector<i64>>{{3, 4}});
    CHECK(forms(16, 41).empty());
}

TEST_CASE("two-term forms agree with brute force and normalize back") {
    for (i64 q = 5; q <= 61; q += 2)
        for (i64 p = 2; p < q - 1; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            KnotClass k = normalize_knot(fr(p, q));
            auto fast = two_term_forms(k);
            auto brute = brute_two_term_forms(p, q);
            REQUIRE(fast.size() == brute.size());
            for (std::size_t i = 0; i < fast.size(); ++i) REQUIRE(fast[i] == brute[i]);
            for (const auto& e : fast) {
                KnotClass back = normalize_knot(evaluate(e));
                CHECK(back.p == k.p);
                CHECK(back.q == k.q);
                CHECK_FALSE(back.mirrored);
            }
        }
}

TEST_CASE("every fraction up to q = 199 lands in exactly one family") {
    for (i64 q = 3; q <= 199; q += 2)
        for (i64 p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            KnotClass k = normalize_knot(fr(p, q));
            CHECK(k.q == q);
            if (k.family != KnotFamily::TorusKnot) {
                CHECK(k.p % 2 == 0);
                CHECK(k.p > 1);
                CHECK(k.p < q - 1);
            }
        }
}

TEST_CASE("family detection is stable under the numerator inverse") {
    for (i64 q = 5; q <= 99; q += 2)
        for (i64 p = 2; p < q - 1; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            KnotClass k = normalize_knot(fr(p, q));
            i64 pi = mod_inverse(p, q);
            if (pi % 2 != 0) continue;  // inverse lands in the mirror class
            KnotClass ki = normalize_knot(fr(pi, q));
            CHECK(k.family == ki.family);
            if (k.family == KnotFamily::TwistKnot) {
                CHECK(k.twist_n == ki.twist_n);
                CHECK(k.twist_sign == ki.twist_sign);
            }
        }
}
