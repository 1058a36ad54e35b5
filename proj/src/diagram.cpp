#include "twobridge/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twobridge {

namespace {

struct Vec {
    i64 n = 0, d = 0;
};

Vec checked(const Vec& v) {
    if (std::llabs(v.n) > (1LL << 62) || std::llabs(v.d) > (1LL << 62)) throw ArithmeticOverflow();
    return v;
}

Vec combine(i64 c1, const Vec& a, i64 c2, const Vec& b) {
    i64 n, d, t1, t2;
    if (__builtin_mul_overflow(c1, a.n, &t1) || __builtin_mul_overflow(c2, b.n, &t2) ||
        __builtin_add_overflow(t1, t2, &n))
        throw ArithmeticOverflow();
    if (__builtin_mul_overflow(c1, a.d, &t1) || __builtin_mul_overflow(c2, b.d, &t2) ||
        __builtin_add_overflow(t1, t2, &d))
        throw ArithmeticOverflow();
    return checked({n, d});
}

Fraction canonical_label(const Vec& v) {
    if (v.n == 0 && v.d == 0) throw InternalInconsistency("zero vector in diagram construction");
    return Fraction::make(v.n, v.d);
}

i64 det(const Vec& a, const Vec& b) {
    __int128 d = static_cast<__int128>(a.n) * b.d - static_cast<__int128>(a.d) * b.n;
    if (d > (static_cast<__int128>(1) << 62) || d < -(static_cast<__int128>(1) << 62))
        throw ArithmeticOverflow();
    return static_cast<i64>(d);
}

}  // namespace

int Diagram::edge_index(const Edge& e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) return -1;
    return static_cast<int>(it - edges.begin());
}

int Diagram::vertex_of(const Fraction& label) const {
    for (const auto& v : vertices)
        if (v.label == label) return v.id;
    return -1;
}

int Diagram::sector_triangles(int v, int edge_a, int edge_b) const {
    const auto& star = star_edges[v];
    auto pa = std::find(star.begin(), star.end(), edge_a);
    auto pb = std::find(star.begin(), star.end(), edge_b);
    if (pa == star.end() || pb == star.end())
        throw InternalInconsistency("edge not incident to vertex in sector query");
    return static_cast<int>(pa < pb ? pb - pa : pa - pb);
}

Diagram build_diagram(const Expansion& e) {
    Diagram d;
    d.expansion = e;
    d.fraction = evaluate(e);  // throws DegenerateExpansion
    const auto& terms = e.terms();
    const int k = static_cast<int>(terms.size());

    // Prefix vectors: W[0] = 1/0, W[1] = 0/1, W[i+1] = a_i * W[i] - W[i-1].
    // Consecutive vectors satisfy det(W[i], W[i+1]) = -1, so every mediant
    // step below stays inside the Farey tessellation.
    std::vector<Vec> W(k + 2);
    W[0] = {-1, 0};
    W[1] = {0, 1};
    for (int i = 1; i <= k; ++i) W[i + 1] = combine(terms[i - 1], W[i], -1, W[i - 1]);

    std::map<std::pair<i64, i64>, int> vertex_ids;
    auto vertex_id = [&](const Vec& v) {
        Fraction label = canonical_label(v);
        auto key = std::make_pair(label.num(), label.den());
        auto it = vertex_ids.find(key);
        if (it != vertex_ids.end()) return it->second;
        int id = static_cast<int>(d.vertices.size());
        vertex_ids.emplace(key, id);
        d.vertices.push_back({id, label, label.parity(), false, false});
        return id;
    };

    std::map<Triangle, int> tri_ids;
    auto triangle_id = [&](int x, int y, int z) {
        Triangle t{x, y, z};
        std::sort(t.begin(), t.end());
        if (t[0] == t[1] || t[1] == t[2])
            throw InternalInconsistency("degenerate triangle in fan gluing");
        auto it = tri_ids.find(t);
        if (it != tri_ids.end()) return it->second;
        int id = static_cast<int>(tri_ids.size());
        tri_ids.emplace(t, id);
        return id;
    };

    std::vector<Triangle> tri_list;
    for (int i = 1; i <= k; ++i) {
        const Vec apex = W[i];
        const int apex_id = vertex_id(apex);
        const i64 a = terms[i - 1];
        const i64 m = std::llabs(a);
        const i64 step = a > 0 ? -1 : 1;  // rim_j = rim_{j-1} - sign(a) * apex
        Fan fan;
        fan.term = a;
        fan.apex = apex_id;
        Vec rim = W[i - 1];
        int rim_id = vertex_id(rim);
        fan.initial = Edge(apex_id, rim_id);
        for (i64 j = 1; j <= m; ++j) {
            Vec next = combine(1, rim, step, apex);
            int next_id = vertex_id(next);
            int t = triangle_id(apex_id, rim_id, next_id);
            if (t == static_cast<int>(tri_list.size())) {
                Triangle tri{apex_id, rim_id, next_id};
                std::sort(tri.begin(), tri.end());
                tri_list.push_back(tri);
            }
            fan.triangles.push_back(t);
            rim = next;
            rim_id = next_id;
        }
        fan.terminal = Edge(apex_id, rim_id);
        // The last rim vertex must land on the next prefix value.
        if (canonical_label(rim) != canonical_label(W[i + 1]))
            throw InternalInconsistency("fan did not land on the next prefix vertex");
        d.fans.push_back(std::move(fan));
    }

    // Triangle indices were assigned in tri_list order; keep that order but
    // remap to the sorted order used by the public vector.
    std::vector<int> order(tri_list.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return tri_list[x] < tri_list[y]; });
    std::vector<int> remap(tri_list.size());
    d.triangles.resize(tri_list.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        remap[order[pos]] = static_cast<int>(pos);
        d.triangles[pos] = tri_list[order[pos]];
    }
    for (auto& fan : d.fans)
        for (auto& t : fan.triangles) t = remap[t];

    std::set<Edge> edge_set;
    for (const auto& t : d.triangles) {
        edge_set.insert(Edge(t[0], t[1]));
        edge_set.insert(Edge(t[0], t[2]));
        edge_set.insert(Edge(t[1], t[2]));
    }
    d.edges.assign(edge_set.begin(), edge_set.end());

    d.edge_tris_.assign(d.edges.size(), {});
    for (std::size_t ti = 0; ti < d.triangles.size(); ++ti) {
        const auto& t = d.triangles[ti];
        for (const Edge& e2 : {Edge(t[0], t[1]), Edge(t[0], t[2]), Edge(t[1], t[2])})
            d.edge_tris_[d.edge_index(e2)].push_back(static_cast<int>(ti));
    }

    d.source = d.vertex_of(Fraction::infinity());
    d.sink = d.vertex_of(d.fraction);
    if (d.source < 0 || d.sink < 0 || d.source == d.sink)
        throw InternalInconsistency("diagram endpoints missing");

    // Boundary cycle: walk the two chains of boundary edges from 1/0.
    std::vector<std::vector<int>> boundary_at(d.vertices.size());
    for (std::size_t ei = 0; ei < d.edges.size(); ++ei)
        if (d.is_boundary_edge(static_cast<int>(ei))) {
            boundary_at[d.edges[ei].a].push_back(static_cast<int>(ei));
            boundary_at[d.edges[ei].b].push_back(static_cast<int>(ei));
        }
    for (const auto& b : boundary_at)
        if (b.size() != 2) throw InternalInconsistency("boundary is not a cycle");

    auto walk = [&](int first_edge) {
        std::vector<int> path{d.source};
        int cur = d.source, via = first_edge;
        while (true) {
            int nxt = d.edges[via].other(cur);
            path.push_back(nxt);
            if (nxt == d.sink) break;
            const auto& out = boundary_at[nxt];
            via = (out[0] == via) ? out[1] : out[0];
            cur = nxt;
            if (path.size() > d.vertices.size() + 1)
                throw InternalInconsistency("boundary walk did not terminate");
        }
        return path;
    };
    std::vector<int> side_a = walk(boundary_at[d.source][0]);
    std::vector<int> side_b = walk(boundary_at[d.source][1]);
    int zero_one = d.vertex_of(Fraction::make(0, 1));
    bool a_has_zero = std::find(side_a.begin(), side_a.end(), zero_one) != side_a.end();
    d.top_path = a_has_zero ? side_a : side_b;
    d.bottom_path = a_has_zero ? side_b : side_a;
    for (int v : d.top_path) d.vertices[v].on_top = true;
    for (int v : d.bottom_path) d.vertices[v].on_bottom = true;

    // Rotational stars: order the incident edges of each vertex from one
    // boundary edge to the other across the incident triangles.
    d.star_edges.resize(d.vertices.size());
    d.star_tris.resize(d.vertices.size());
    std::vector<std::vector<int>> tris_at(d.vertices.size());
    for (std::size_t ti = 0; ti < d.triangles.size(); ++ti)
        for (int v : d.triangles[ti]) tris_at[v].push_back(static_cast<int>(ti));
    for (const auto& v : d.vertices) {
        std::vector<int> inc;
        for (std::size_t ei = 0; ei < d.edges.size(); ++ei)
            if (d.edges[ei].has(v.id)) inc.push_back(static_cast<int>(ei));
        // Start at the boundary edge with the smaller index for determinism.
        int start = -1;
        for (int ei : inc)
            if (d.is_boundary_edge(ei) && (start < 0 || ei < start)) start = ei;
        if (start < 0) throw InternalInconsistency("vertex without boundary edge");
        auto& se = d.star_edges[v.id];
        auto& st = d.star_tris[v.id];
        se.push_back(start);
        int prev_tri = -1;
        int cur_edge = start;
        while (se.size() < inc.size()) {
            // The next triangle around v across cur_edge.
            int next_tri = -1;
            for (int ti : d.edge_tris_[cur_edge])
                if (ti != prev_tri) next_tri = ti;
            if (next_tri < 0) throw InternalInconsistency("star walk stuck");
            // The other edge of next_tri at v.
            const auto& t = d.triangles[next_tri];
            int next_edge = -1;
            for (const Edge& cand : {Edge(t[0], t[1]), Edge(t[0], t[2]), Edge(t[1], t[2])}) {
                if (!cand.has(v.id)) continue;
                int ei = d.edge_index(cand);
                if (ei != cur_edge) next_edge = ei;
            }
            st.push_back(next_tri);
            se.push_back(next_edge);
            prev_tri = next_tri;
            cur_edge = next_edge;
        }
        if (st.size() + 1 != se.size() || st.size() != tris_at[v.id].size())
            throw InternalInconsistency("vertex star walk incomplete");
    }

    return d;
}

void Diagram::validate() const {
    const auto& terms = expansion.terms();
    const std::size_t V = vertices.size();

    // Farey condition on every edge.
    for (const auto& e : edges) {
        const Fraction& x = vertices[e.a].label;
        const Fraction& y = vertices[e.b].label;
        Vec vx{x.num(), x.den()}, vy{y.num(), y.den()};
        if (std::llabs(det(vx, vy)) != 1)
            throw InternalInconsistency("edge violates the Farey condition: " + x.str() + "--" + y.str());
    }

    // Each triangle carries all three parities.
    for (const auto& t : triangles) {
        std::set<Parity> ps{vertices[t[0]].parity, vertices[t[1]].parity, vertices[t[2]].parity};
        if (ps.size() != 3) throw InternalInconsistency("triangle with repeated parity class");
    }

    // Disk Euler counts, with every vertex on the boundary.
    if (triangles.size() != V - 2) throw InternalInconsistency("triangle count is not V - 2");
    if (edges.size() != 2 * V - 3) throw InternalInconsistency("edge count is not 2V - 3");
    for (const auto& v : vertices)
        if (!v.on_top && !v.on_bottom) throw InternalInconsistency("interior vertex found");

    // Fan sizes and the gluing rules between adjacent fans.
    int sign_changes = 0, same_sign = 0;
    for (std::size_t i = 0; i < fans.size(); ++i) {
        if (fans[i].triangles.size() != static_cast<std::size_t>(std::llabs(fans[i].term)))
            throw InternalInconsistency("fan size does not match its term");
        if (i == 0) continue;
        const auto& prev = fans[i - 1];
        const auto& cur = fans[i];
        if (prev.terminal != cur.initial)
            throw InternalInconsistency("terminal edge not glued to the next initial edge");
        std::set<int> pt(prev.triangles.begin(), prev.triangles.end());
        int shared = 0;
        for (int t : cur.triangles)
            if (pt.count(t)) ++shared;
        if (prev.term * cur.term < 0) {
            ++sign_changes;
            if (shared != 0) throw InternalInconsistency("sign-change fans share a triangle");
        } else {
            ++same_sign;
            if (shared != 1) throw InternalInconsistency("same-sign fans do not share one triangle");
        }
    }

    // Vertex count identity from the gluing combinatorics.
    i64 expected_v = 0;
    for (i64 t : terms) expected_v += std::llabs(t) + 2;
    expected_v -= 2 * sign_changes + 3 * same_sign;
    if (static_cast<i64>(V) != expected_v)
        throw InternalInconsistency("vertex count identity failed");

    // Boundary paths run from 1/0 to the value, disjoint except at the ends,
    // with 0/1 on top and 1/1 (when present) on the bottom.
    if (top_path.front() != source || bottom_path.front() != source ||
        top_path.back() != sink || bottom_path.back() != sink)
        throw InternalInconsistency("boundary paths have wrong endpoints");
    int zero_one = vertex_of(Fraction::make(0, 1));
    if (std::find(top_path.begin(), top_path.end(), zero_one) == top_path.end())
        throw InternalInconsistency("0/1 is not on the top path");
    int one_one = vertex_of(Fraction::make(1, 1));
    if (one_one >= 0 &&
        std::find(bottom_path.begin(), bottom_path.end(), one_one) == bottom_path.end())
        throw InternalInconsistency("1/1 is not on the bottom path");
    std::set<int> tops(top_path.begin(), top_path.end());
    for (std::size_t i = 1; i + 1 < bottom_path.size(); ++i)
        if (tops.count(bottom_path[i]))
            throw InternalInconsistency("boundary paths meet away from the endpoints");
}

std::string emit_json(const Diagram& d) {
    nlohmann::ordered_json j;
    j["fraction"] = d.fraction.str();
    j["expansion"] = d.expansion.terms();
    auto verts = nlohmann::ordered_json::array();
    for (const auto& v : d.vertices) {
        verts.push_back({{"id", v.id},
                         {"label", v.label.str()},
                         {"parity", to_string(v.parity)},
                         {"top", v.on_top},
                         {"bottom", v.on_bottom}});
    }
    j["vertices"] = std::move(verts);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : d.edges) edges.push_back({e.a, e.b});
    j["edges"] = std::move(edges);
    auto tris = nlohmann::ordered_json::array();
    for (const auto& t : d.triangles) tris.push_back({t[0], t[1], t[2]});
    j["triangles"] = std::move(tris);
    auto fans = nlohmann::ordered_json::array();
    for (const auto& f : d.fans) fans.push_back({{"term", f.term}, {"triangles", f.triangles}});
    j["fans"] = std::move(fans);
    j["top_path"] = d.top_path;
    j["bottom_path"] = d.bottom_path;
    return j.dump(2);
}

std::string emit_dot(const Diagram& d) {
    std::ostringstream os;
    os << "graph diagram {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle, fontsize=10];\n";
    auto group = [&](const char* name, const std::vector<int>& path) {
        os << "  subgraph " << name << " {\n    rank=same;\n";
        for (std::size_t i = 1; i + 1 < path.size(); ++i) os << "    v" << path[i] << ";\n";
        os << "  }\n";
    };
    group("cluster_top", d.top_path);
    group("cluster_bottom", d.bottom_path);
    for (const auto& v : d.vertices)
        os << "  v" << v.id << " [label=\"" << v.label.str() << "\"];\n";
    for (const auto& e : d.edges) os << "  v" << e.a << " -- v" << e.b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace twobridge
