#include "twobridge/classifier.hpp"

#include <map>
#include <numeric>
#include <set>

#include "doctest.h"

using namespace twobridge;

namespace {

Fraction fr(i64 n, i64 d = 1) { return Fraction::make(n, d); }

std::map<i64, VerdictKind> census_map(const KnotReport& r) {
    std::map<i64, VerdictKind> m;
    for (const auto& e : r.census) m[e.slope.num()] = e.kind;
    return m;
}

}  // namespace

TEST_CASE("figure-eight census has exactly nine entries") {
    KnotReport r = classify_knot(fr(2, 5));
    CHECK(r.knot.family == KnotFamily::FigureEight);
    REQUIRE(r.census.size() == 9);
    auto m = census_map(r);
    for (i64 s : {0, 4, -4}) CHECK(m.at(s) == VerdictKind::Toroidal);
    for (i64 s : {1, 2, 3, -1, -2, -3}) CHECK(m.at(s) == VerdictKind::SmallSeifertFibered);
    // Symmetric under slope negation.
    for (const auto& [s, kind] : m) CHECK(m.at(-s) == kind);
}

TEST_CASE("twist knot censuses") {
    KnotReport r = classify_knot(fr(2, 7));  // [4,2], n = 2, sign +
    CHECK(r.knot.family == KnotFamily::TwistKnot);
    REQUIRE(r.census.size() == 5);
    auto m = census_map(r);
    CHECK(m.at(0) == VerdictKind::Toroidal);
    CHECK(m.at(-4) == VerdictKind::Toroidal);
    for (i64 s : {-1, -2, -3}) CHECK(m.at(s) == VerdictKind::SmallSeifertFibered);

    KnotReport r9 = classify_knot(fr(2, 9));  // [4,-2], n = 2, sign -
    auto m9 = census_map(r9);
    CHECK(m9.at(0) == VerdictKind::Toroidal);
    CHECK(m9.at(4) == VerdictKind::Toroidal);
    for (i64 s : {1, 2, 3}) CHECK(m9.at(s) == VerdictKind::SmallSeifertFibered);
}

TEST_CASE("two-term generic censuses") {
    KnotReport r15 = classify_knot(fr(4, 15));  // [4,4]
    REQUIRE(r15.census.size() == 1);
    CHECK(r15.census[0].slope == fr(0));
    CHECK(r15.census[0].kind == VerdictKind::Toroidal);

    KnotReport r11 = classify_knot(fr(4, 11));  // [3,4]
    REQUIRE(r11.census.size() == 1);
    CHECK(r11.census[0].slope == fr(8));
    CHECK(r11.census[0].kind == VerdictKind::Toroidal);

    // 3 = 4^{-1} mod 11, so K_{3/11} is the same knot: same slope.
    KnotReport ri = classify_knot(fr(3, 11));
    REQUIRE(ri.census.size() == 1);
    CHECK(ri.census[0].slope == fr(8));
    // -4 = 7 mod 11 names the mirror image: the slope negates.
    KnotReport rm = classify_knot(fr(7, 11));
    REQUIRE(rm.census.size() == 1);
    CHECK(rm.census[0].slope == fr(-8));
}

TEST_CASE("generic knots have an empty census") {
    KnotReport r = classify_knot(fr(16, 41));
    CHECK(r.knot.family == KnotFamily::Generic);
    CHECK(r.census.empty());
    CHECK(r.diagnostics.contains("obstruction_path"));
    KnotReport r2 = classify_knot(fr(8, 13));
    CHECK(r2.census.empty());
}

TEST_CASE("torus knots reduce at 2q") {
    KnotReport r = classify_knot(fr(1, 3));
    REQUIRE(r.census.size() == 1);
    CHECK(r.census[0].slope == fr(6));
    CHECK(r.census[0].kind == VerdictKind::Reducible);
    // The mirror trefoil reduces at -6.
    KnotReport rm = classify_knot(fr(2, 3));
    CHECK(rm.census[0].slope == fr(-6));
    // Any other slope is an out-of-scope torus-knot surgery.
    SurgeryVerdict v = classify_slope(fr(1, 3), fr(5));
    CHECK(v.kind == VerdictKind::TorusKnotSurgery);
    CHECK(v.certificate.data["out_of_scope"] == true);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(classify_knot(fr(5, 1)), TrivialKnot);
    CHECK_THROWS_AS(classify_knot(fr(1, 4)), IsLink);
    CHECK_THROWS_AS(classify_slope(fr(2, 5), Fraction::infinity()), TrivialSlope);
}

TEST_CASE("slope verdicts cite the expected sources") {
    // Non-integral slope on the figure-eight knot.
    SurgeryVerdict v1 = classify_slope(fr(2, 5), fr(1, 2));
    CHECK(v1.kind == VerdictKind::NonExceptional);
    CHECK(v1.certificate.sources.front() == SourceKind::NonIntegralObstruction);

    // Slope below -4 on a twist knot: the Klein-bottle interval.
    SurgeryVerdict v2 = classify_slope(fr(2, 7), fr(-5));
    CHECK(v2.kind == VerdictKind::NonExceptional);
    CHECK(v2.certificate.sources.front() == SourceKind::KleinBottleInterval);
    CHECK(v2.certificate.data["interval"] == "(-inf,-4)");

    // Toroidal census hit.
    CHECK(classify_slope(fr(2, 7), fr(0)).kind == VerdictKind::Toroidal);

    // Positive side of an |n| = 2 twist knot: statement only, flagged.
    SurgeryVerdict v3 = classify_slope(fr(2, 7), fr(2));
    CHECK(v3.kind == VerdictKind::NonExceptional);
    CHECK(v3.certificate.sources.front() == SourceKind::CensusStatement);
    CHECK(v3.certificate.incomplete_derivation);

    // Positive side of an |n| > 2 twist knot: the Seifert-surface interval.
    SurgeryVerdict v4 = classify_slope(fr(2, 11), fr(2));  // [6,2], n = 3
    CHECK(v4.certificate.sources.front() == SourceKind::SeifertSurfaceInterval);
    CHECK_FALSE(v4.certificate.incomplete_derivation);

    // Generic knots carry the path obstruction.
    SurgeryVerdict v5 = classify_slope(fr(16, 41), fr(17));
    CHECK(v5.certificate.sources.front() == SourceKind::PathObstruction);
    CHECK(v5.certificate.data["path"]["max_corner"].get<int>() >= 3);

    // Large slopes on the figure-eight knot use the interval plus symmetry.
    SurgeryVerdict v6 = classify_slope(fr(2, 5), fr(5));
    CHECK(v6.certificate.sources.front() == SourceKind::KleinBottleInterval);
    CHECK(v6.certificate.data["amphicheiral"] == true);
    CHECK_FALSE(v6.certificate.incomplete_derivation);

    // Two-term knots cite the one-exceptional-slope census with the
    // two-channel path attached, for integral and non-integral slopes alike.
    SurgeryVerdict v7 = classify_slope(fr(4, 15), fr(3));
    CHECK(v7.certificate.sources.front() == SourceKind::TwoTermCensus);
    CHECK(v7.certificate.data["whitehead_path"]["certificate"]["channels"] == 2);
    SurgeryVerdict v8 = classify_slope(fr(4, 15), fr(-7, 2));
    CHECK(v8.kind == VerdictKind::NonExceptional);
    CHECK(v8.certificate.sources.front() == SourceKind::TwoTermCensus);

    // Twist knots use the non-integral obstruction off the integers.
    SurgeryVerdict v9 = classify_slope(fr(2, 7), fr(5, 2));
    CHECK(v9.certificate.sources.front() == SourceKind::NonIntegralObstruction);
    CHECK(v9.certificate.data["whitehead_path"]["certificate"]["channels"] == 2);
}

TEST_CASE("mirror equivariance and inverse invariance") {
    for (i64 q = 5; q <= 45; q += 2)
        for (i64 p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            for (i64 s = -6; s <= 6; ++s) {
                auto a = classify_slope(fr(p, q), fr(s));
                auto b = classify_slope(fr(q - p, q), fr(-s));
                CAPTURE(p);
                CAPTURE(q);
                CAPTURE(s);
                REQUIRE(a.kind == b.kind);
            }
        }
    for (i64 q = 5; q <= 45; q += 2)
        for (i64 p = 2; p < q - 1; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            i64 pi = mod_inverse(p, q);
            auto ca = census_map(classify_knot(fr(p, q)));
            auto cb = census_map(classify_knot(fr(pi, q)));
            REQUIRE(ca == cb);
        }
}

TEST_CASE("every non-exceptional verdict carries a source") {
    for (i64 q = 5; q <= 29; q += 2)
        for (i64 p = 2; p < q - 1; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            for (i64 s = -7; s <= 7; ++s) {
                auto v = classify_slope(fr(p, q), fr(s));
                if (v.kind != VerdictKind::NonExceptional) continue;
                REQUIRE(!v.certificate.sources.empty());
                if (v.certificate.incomplete_derivation)
                    REQUIRE(v.certificate.sources.front() == SourceKind::CensusStatement);
            }
        }
}

TEST_CASE("report json round trips through its schema") {
    auto j = report_to_json(classify_knot(fr(2, 7)));
    CHECK(j["family"] == "twist-knot");
    CHECK(j["census"].size() == 5);
    CHECK(j["canonical"]["p"] == 2);
    CHECK(j["canonical"]["q"] == 7);
    auto parsed = nlohmann::ordered_json::parse(j.dump());
    CHECK(parsed == j);
    auto v = verdict_to_json(classify_slope(fr(2, 7), fr(-5)));
    CHECK(v["kind"] == "non-exceptional");
}
