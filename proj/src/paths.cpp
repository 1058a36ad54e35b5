#include "twobridge/paths.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "json.hpp"

namespace twobridge {

namespace {

// Off-edge vertex of triangle t relative to edge e.
int off_vertex(const Triangle& t, const Edge& e) {
    for (int v : t)
        if (!e.has(v)) return v;
    return -1;
}

}  // namespace

std::vector<Channel> find_channels(const Diagram& d) {
    std::vector<Channel> out;
    for (std::size_t ei = 0; ei < d.edges.size(); ++ei) {
        const auto& tris = d.edge_triangles(static_cast<int>(ei));
        if (tris.size() != 2) continue;
        const Edge& shared = d.edges[ei];
        int ta = std::min(tris[0], tris[1]);
        int tb = std::max(tris[0], tris[1]);
        int wa = off_vertex(d.triangles[ta], shared);
        int wb = off_vertex(d.triangles[tb], shared);
        if (d.vertices[wa].parity != Parity::OddOdd || d.vertices[wb].parity != Parity::OddOdd)
            continue;
        // The two diagonal smoothings: each path end rides the triangle edge
        // toward the opposite endpoint of the shared edge.
        for (int variant = 0; variant < 2; ++variant) {
            int u = variant == 0 ? shared.a : shared.b;
            int v = variant == 0 ? shared.b : shared.a;
            Channel c;
            c.tri_a = ta;
            c.tri_b = tb;
            c.shared = shared;
            c.end_a = wa;
            c.end_b = wb;
            c.attach_a = Edge(wa, v);
            c.attach_b = Edge(u, wb);
            out.push_back(c);
        }
    }
    return out;
}

int corner_number(const Diagram& d, const DiagramPath& path, int vertex) {
    for (std::size_t i = 1; i + 1 <= path.arcs.size(); ++i) {
        if (path.vertices[i] != vertex) continue;
        Edge ea = path.arcs[i - 1].effective_edge(vertex);
        Edge eb = path.arcs[i].effective_edge(vertex);
        int ia = d.edge_index(ea);
        int ib = d.edge_index(eb);
        if (ia < 0 || ib < 0) throw InternalInconsistency("path arc rides a missing edge");
        return d.sector_triangles(vertex, ia, ib);
    }
    throw NotOnPath();
}

std::optional<AllowableCertificate> make_certificate(const Diagram& d,
                                                     const std::vector<PathArc>& arcs) {
    if (arcs.empty()) return std::nullopt;
    // Chain the arcs into a vertex sequence starting at 1/0.
    std::vector<int> verts{d.source};
    for (const auto& arc : arcs) {
        int cur = verts.back();
        if (!arc.touches(cur)) return std::nullopt;
        verts.push_back(arc.end_u() == cur ? arc.end_v() : arc.end_u());
    }
    if (verts.back() != d.sink) return std::nullopt;
    std::set<int> seen(verts.begin(), verts.end());
    if (seen.size() != verts.size()) return std::nullopt;

    AllowableCertificate cert;
    cert.path.arcs = arcs;
    cert.path.vertices = verts;
    for (const auto& arc : arcs)
        if (arc.is_channel) ++cert.channel_count;
    if (cert.channel_count == 0) return std::nullopt;

    int min_c = 1 << 30;
    int max_c = -1;
    for (std::size_t i = 1; i + 1 < verts.size(); ++i) {
        int v = verts[i];
        int c = corner_number(d, cert.path, v);
        if (c < 2) return std::nullopt;
        cert.corners[v] = c;
        min_c = std::min(min_c, c);
        if (c > max_c) {
            max_c = c;
            cert.witness_vertex = v;
        }
    }
    cert.min_corner = cert.corners.empty() ? 2 : min_c;
    cert.max_corner = max_c < 0 ? 2 : max_c;
    if (max_c < 0) cert.witness_vertex.reset();
    return cert;
}

namespace {

struct ArcOption {
    PathArc arc;
    int to = -1;
    // Ordering key: edges before channels, then by target vertex, then by
    // the attachment edges.
    std::array<int, 6> key{};
};

std::vector<std::vector<ArcOption>> arc_table(const Diagram& d, const std::vector<Channel>& channels) {
    std::vector<std::vector<ArcOption>> at(d.vertices.size());
    for (const auto& e : d.edges) {
        for (int v : {e.a, e.b}) {
            ArcOption o;
            o.arc.is_channel = false;
            o.arc.edge = e;
            o.to = e.other(v);
            o.key = {0, o.to, 0, 0, 0, 0};
            at[v].push_back(o);
        }
    }
    for (const auto& c : channels) {
        for (int v : {c.end_a, c.end_b}) {
            ArcOption o;
            o.arc.is_channel = true;
            o.arc.channel = c;
            o.to = c.other_end(v);
            const Edge& here = c.attach_at(v);
            const Edge& there = c.attach_at(o.to);
            o.key = {1, o.to, here.a, here.b, there.a, there.b};
            at[v].push_back(o);
        }
    }
    for (auto& opts : at)
        std::sort(opts.begin(), opts.end(),
                  [](const ArcOption& x, const ArcOption& y) { return x.key < y.key; });
    return at;
}

struct Dfs {
    const Diagram& d;
    const std::vector<std::vector<ArcOption>>& table;
    const std::function<bool(const AllowableCertificate&)>& visit;
    long long budget;
    long long nodes = 0;
    std::vector<PathArc> arcs;
    std::vector<int> verts;
    std::vector<char> used;
    int channels_used = 0;
    bool stopped = false;

    bool corner_ok(const PathArc& next) {
        if (arcs.empty()) return true;
        int v = verts.back();
        Edge ea = arcs.back().effective_edge(v);
        Edge eb = next.effective_edge(v);
        int ia = d.edge_index(ea), ib = d.edge_index(eb);
        return d.sector_triangles(v, ia, ib) >= 2;
    }

    void run(int v) {
        if (stopped) return;
        if (++nodes > budget) throw BoundExceeded();
        if (v == d.sink) {
            if (channels_used >= 1) {
                auto cert = make_certificate(d, arcs);
                if (!cert) throw InternalInconsistency("search produced an invalid path");
                if (!visit(*cert)) stopped = true;
            }
            return;
        }
        for (const auto& opt : table[v]) {
            if (used[opt.to]) continue;
            if (!corner_ok(opt.arc)) continue;
            arcs.push_back(opt.arc);
            verts.push_back(opt.to);
            used[opt.to] = 1;
            if (opt.arc.is_channel) ++channels_used;
            run(opt.to);
            if (opt.arc.is_channel) --channels_used;
            used[opt.to] = 0;
            verts.pop_back();
            arcs.pop_back();
            if (stopped) return;
        }
    }
};

}  // namespace

void enumerate_allowable_paths(const Diagram& d, long long max_nodes,
                               const std::function<bool(const AllowableCertificate&)>& visit) {
    auto channels = find_channels(d);
    auto table = arc_table(d, channels);
    Dfs dfs{d, table, visit, max_nodes, 0, {}, {}, {}, 0, false};
    dfs.used.assign(d.vertices.size(), 0);
    dfs.verts.push_back(d.source);
    dfs.used[d.source] = 1;
    dfs.run(d.source);
}

std::vector<AllowableCertificate> all_allowable_paths(const Diagram& d, long long max_nodes) {
    std::vector<AllowableCertificate> out;
    enumerate_allowable_paths(d, max_nodes, [&](const AllowableCertificate& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

namespace {

// Position of v in a boundary path, or -1.
int path_pos(const std::vector<int>& path, int v) {
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i] == v) return static_cast<int>(i);
    return -1;
}

// Boundary run between two vertices of the same boundary path, as edge arcs.
std::optional<std::vector<PathArc>> boundary_run(const Diagram& d, int from, int to) {
    for (const auto* path : {&d.top_path, &d.bottom_path}) {
        int i = path_pos(*path, from), j = path_pos(*path, to);
        if (i < 0 || j < 0 || i > j) continue;
        std::vector<PathArc> arcs;
        for (int t = i; t < j; ++t) {
            PathArc a;
            a.edge = Edge((*path)[t], (*path)[t + 1]);
            arcs.push_back(a);
        }
        return arcs;
    }
    return std::nullopt;
}

// Assemble source -> ch[0] -> ... -> ch.back() -> sink with boundary runs in
// between, trying both traversal orientations of every channel.
std::optional<AllowableCertificate> path_via_channels(const Diagram& d,
                                                      const std::vector<Channel>& chain) {
    const int n = static_cast<int>(chain.size());
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<PathArc> arcs;
        int cur = d.source;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const Channel& c = chain[i];
            int entry = (mask >> i) & 1 ? c.end_b : c.end_a;
            auto run = boundary_run(d, cur, entry);
            if (!run) {
                ok = false;
                break;
            }
            arcs.insert(arcs.end(), run->begin(), run->end());
            PathArc a;
            a.is_channel = true;
            a.channel = c;
            arcs.push_back(a);
            cur = c.other_end(entry);
        }
        if (!ok) continue;
        auto tail = boundary_run(d, cur, d.sink);
        if (!tail) continue;
        arcs.insert(arcs.end(), tail->begin(), tail->end());
        auto cert = make_certificate(d, arcs);
        if (cert) return cert;
    }
    return std::nullopt;
}

// Channels available for a given adjacent triangle pair, in enumeration order.
std::vector<Channel> channels_of_pair(const std::vector<Channel>& all, int ta, int tb) {
    std::vector<Channel> out;
    for (const auto& c : all)
        if (c.tri_a == std::min(ta, tb) && c.tri_b == std::max(ta, tb)) out.push_back(c);
    return out;
}

}  // namespace

AllowableCertificate obstruction_path(const Diagram& d) {
    if (!d.expansion.all_even())
        throw DomainError("obstruction path requires the all-even expansion diagram");
    if (d.expansion.all_two()) throw AllTwosExpansion();

    auto channels = find_channels(d);
    std::vector<Channel> candidates;

    if (d.expansion.has_negative()) {
        // A sign change glues two fans along an edge; the cross channel there
        // leaves the rim of one fan and lands on the rim of the other.
        for (std::size_t i = 1; i < d.fans.size(); ++i) {
            if (d.fans[i - 1].term * d.fans[i].term > 0) continue;
            auto cs = channels_of_pair(channels, d.fans[i - 1].triangles.back(),
                                       d.fans[i].triangles.front());
            candidates.insert(candidates.end(), cs.begin(), cs.end());
        }
    } else {
        // No sign change: some term is at least 4 and the channel lives
        // inside that fan, both ends on the bottom path.
        for (const auto& fan : d.fans) {
            if (std::llabs(fan.term) < 4) continue;
            for (std::size_t j = 0; j + 1 < fan.triangles.size(); ++j) {
                auto cs = channels_of_pair(channels, fan.triangles[j], fan.triangles[j + 1]);
                candidates.insert(candidates.end(), cs.begin(), cs.end());
            }
        }
    }

    for (const auto& c : candidates) {
        auto cert = path_via_channels(d, {c});
        if (cert) return *cert;
    }
    throw InternalInconsistency("no constructive allowable path found for " +
                                d.expansion.str());
}

WhiteheadPathResult twisted_whitehead_path(i64 r) {
    if (std::llabs(r) <= 2) throw TooFewTwists();
    WhiteheadPathResult res;
    res.mirrored = r > 0;
    res.twist = res.mirrored ? -r : r;
    Expansion exp = res.twist % 2 == 0 ? Expansion({2, res.twist, -2})
                                       : Expansion({2, res.twist + 1, 2});
    res.diagram = build_diagram(exp);
    const Diagram& d = res.diagram;
    auto channels = find_channels(d);

    // First channel crosses from the initial fan into the twist fan.
    auto first = channels_of_pair(channels, d.fans[0].triangles.back(),
                                  d.fans[1].triangles.front());
    // Second channel: inside the twist fan for even twists, crossing into the
    // closing fan for odd ones.
    std::vector<Channel> second;
    if (res.twist % 2 == 0) {
        const auto& fan = d.fans[1];
        for (std::size_t j = fan.triangles.size() - 1; j-- > 0;) {
            auto cs = channels_of_pair(channels, fan.triangles[j], fan.triangles[j + 1]);
            second.insert(second.end(), cs.begin(), cs.end());
        }
    } else {
        second = channels_of_pair(channels, d.fans[1].triangles.back(),
                                  d.fans[2].triangles.front());
    }

    for (const auto& c1 : first)
        for (const auto& c2 : second) {
            auto cert = path_via_channels(d, {c1, c2});
            if (cert && cert->channel_count == 2) {
                res.certificate = *cert;
                return res;
            }
        }
    throw InternalInconsistency("no two-channel path found for twist " + std::to_string(r));
}

std::string certificate_to_json(const Diagram& d, const AllowableCertificate& cert) {
    nlohmann::ordered_json j;
    auto arcs = nlohmann::ordered_json::array();
    for (const auto& a : cert.path.arcs) {
        if (!a.is_channel) {
            arcs.push_back({{"edge", {a.edge.a, a.edge.b}}});
        } else {
            const auto& c = a.channel;
            arcs.push_back({{"channel",
                             {{"triangles", {c.tri_a, c.tri_b}},
                              {"shared_edge", {c.shared.a, c.shared.b}},
                              {"ends", {c.end_a, c.end_b}},
                              {"attachments",
                               {{c.attach_a.a, c.attach_a.b}, {c.attach_b.a, c.attach_b.b}}}}}});
        }
    }
    nlohmann::ordered_json path;
    path["arcs"] = std::move(arcs);
    auto verts = nlohmann::ordered_json::array();
    for (int v : cert.path.vertices) verts.push_back(d.vertices[v].label.str());
    path["vertices"] = std::move(verts);
    j["path"] = std::move(path);
    j["channels"] = cert.channel_count;
    j["min_corner"] = cert.min_corner;
    j["max_corner"] = cert.max_corner;
    if (cert.witness_vertex)
        j["witness_vertex"] = d.vertices[*cert.witness_vertex].label.str();
    else
        j["witness_vertex"] = nullptr;
    auto corners = nlohmann::ordered_json::object();
    for (const auto& [v, c] : cert.corners) corners[d.vertices[v].label.str()] = c;
    j["corners"] = std::move(corners);
    return j.dump();
}

}  // namespace twobridge
