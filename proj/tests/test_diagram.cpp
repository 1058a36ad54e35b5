#include "twobridge/diagram.hpp"

#include <numeric>
#include <set>

#include "doctest.h"
#include "json.hpp"

using namespace twobridge;

namespace {

Fraction fr(i64 n, i64 d) { return Fraction::make(n, d); }

std::set<std::string> labels(const Diagram& d, const std::vector<int>& ids) {
    std::set<std::string> out;
    for (int v : ids) out.insert(d.vertices[v].label.str());
    return out;
}

}  // namespace

TEST_CASE("single fan diagram [4]") {
    Diagram d = build_diagram(Expansion({4}));
    d.validate();
    CHECK(d.vertices.size() == 6);
    CHECK(d.edges.size() == 9);
    CHECK(d.triangles.size() == 4);
    CHECK(d.fans.size() == 1);
    CHECK(d.fraction == fr(1, 4));
    CHECK(labels(d, d.top_path) == std::set<std::string>{"inf", "0", "1/4"});
    CHECK(labels(d, d.bottom_path) == std::set<std::string>{"inf", "1", "1/2", "1/3", "1/4"});
}

TEST_CASE("figure-eight diagram [2,-2]") {
    Diagram d = build_diagram(Expansion({2, -2}));
    d.validate();
    CHECK(d.vertices.size() == 6);
    CHECK(d.triangles.size() == 4);
    CHECK(d.fraction == fr(2, 5));
    CHECK(labels(d, d.top_path) == std::set<std::string>{"inf", "0", "1/3", "2/5"});
    CHECK(labels(d, d.bottom_path) == std::set<std::string>{"inf", "1", "1/2", "2/5"});
    // Sign change: the two fans share exactly one edge and no triangle.
    std::set<int> f0(d.fans[0].triangles.begin(), d.fans[0].triangles.end());
    for (int t : d.fans[1].triangles) CHECK(f0.count(t) == 0);
}

TEST_CASE("[2,-2,-4,2] matches the published counts") {
    Diagram d = build_diagram(Expansion({2, -2, -4, 2}));
    d.validate();
    CHECK(d.vertices.size() == 11);
    CHECK(d.edges.size() == 19);
    CHECK(d.triangles.size() == 9);
    CHECK(d.fraction == fr(16, 41));
    // The adjacent negative fans share one triangle.
    std::set<int> f1(d.fans[1].triangles.begin(), d.fans[1].triangles.end());
    int shared = 0;
    for (int t : d.fans[2].triangles) shared += f1.count(t) ? 1 : 0;
    CHECK(shared == 1);
    CHECK(labels(d, d.top_path) ==
          std::set<std::string>{"inf", "0", "1/3", "3/8", "5/13", "7/18", "16/41"});
}

TEST_CASE("whitehead link diagram [2,2,-2]") {
    Diagram d = build_diagram(Expansion({2, 2, -2}));
    d.validate();
    CHECK(d.fraction == fr(5, 8));
    CHECK(d.triangles.size() == 5);
    CHECK(d.vertices.size() == 7);
}

TEST_CASE("link fractions are accepted") {
    Diagram d = build_diagram(Expansion({2, -4, -2}));
    d.validate();
    CHECK(d.fraction == fr(7, 16));
    CHECK(d.triangles.size() == 7);
}

TEST_CASE("degenerate expansions are rejected") {
    CHECK_THROWS_AS(build_diagram(Expansion({1, 1})), DegenerateExpansion);
    CHECK_THROWS_AS(build_diagram(Expansion({2, 1, 2})), DegenerateExpansion);
}

TEST_CASE("diagram validity across canonical knot fractions up to q = 99") {
    for (i64 q = 3; q <= 99; q += 2)
        for (i64 p = 2; p < q; p += 2) {
            if (std::gcd(p, q) != 1) continue;
            Diagram d = build_diagram(even_expansion(fr(p, q)));
            REQUIRE_NOTHROW(d.validate());
            REQUIRE(d.fraction == fr(p, q));
        }
}

TEST_CASE("the diagram depends only on the fraction, not the expansion") {
    // Build from a two-term expansion and from the all-even expansion of the
    // same value; the triangle complexes must coincide label for label.
    auto labels_of = [](const Diagram& d) {
        std::set<std::array<std::string, 3>> out;
        for (const auto& t : d.triangles)
            out.insert({d.vertices[t[0]].label.str(), d.vertices[t[1]].label.str(),
                        d.vertices[t[2]].label.str()});
        return out;
    };
    int compared = 0;
    for (i64 b1 = 3; b1 <= 9; ++b1)
        for (i64 b2 = 3; b2 <= 9; ++b2) {
            if ((b1 * b2) % 2 != 0) continue;
            Fraction v = evaluate(Expansion({b1, b2}));
            if (!(fr(0, 1) < v) || !(v < fr(1, 1)) || v.num() % 2 != 0) continue;
            Diagram a = build_diagram(Expansion({b1, b2}));
            Diagram b = build_diagram(even_expansion(v));
            a.validate();
            b.validate();
            REQUIRE(labels_of(a) == labels_of(b));
            ++compared;
        }
    CHECK(compared >= 10);
}

TEST_CASE("json and dot emission") {
    Diagram d = build_diagram(Expansion({4}));
    auto j = nlohmann::json::parse(emit_json(d));
    CHECK(j["vertices"].size() == 6);
    CHECK(j["edges"].size() == 9);
    CHECK(j["triangles"].size() == 4);
    CHECK(j["fans"].size() == 1);
    CHECK(j["fraction"] == "1/4");

    Diagram big = build_diagram(Expansion({2, -2, -4, 2}));
    auto jb = nlohmann::json::parse(emit_json(big));
    CHECK(jb["vertices"].size() == 11);
    CHECK(jb["edges"].size() == 19);
    CHECK(jb["triangles"].size() == 9);

    std::string dot = emit_dot(d);
    CHECK(dot.rfind("graph diagram {", 0) == 0);
    CHECK(dot.find("v0 -- ") != std::string::npos);
    CHECK(dot.find("digraph") == std::string::npos);
    // Deterministic output.
    CHECK(emit_dot(d) == dot);
    CHECK(emit_json(big) == emit_json(build_diagram(Expansion({2, -2, -4, 2}))));
}

TEST_CASE("sector counts at a vertex") {
    Diagram d = build_diagram(Expansion({4}));
    int apex = d.vertex_of(fr(0, 1));
    int v10 = d.vertex_of(Fraction::infinity());
    int v14 = d.vertex_of(fr(1, 4));
    int e_left = d.edge_index(Edge(apex, v10));
    int e_right = d.edge_index(Edge(apex, v14));
    CHECK(d.sector_triangles(apex, e_left, e_right) == 4);
    CHECK(d.sector_triangles(apex, e_right, e_left) == 4);
    int v11 = d.vertex_of(fr(1, 1));
    int e0 = d.edge_index(Edge(v11, v10));
    int e1 = d.edge_index(Edge(v11, apex));
    CHECK(d.sector_triangles(v11, e0, e1) == 1);
}
