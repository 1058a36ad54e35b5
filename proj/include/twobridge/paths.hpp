#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twobridge/diagram.hpp"

namespace twobridge {

/// A channel through two adjacent triangles whose off-edge vertices are both
/// o/o.  The arc leaves an edge at one off-vertex, crosses the shared edge,
/// and lands on an edge at the other off-vertex; `attach_a`/`attach_b` record
/// those edges, which is exactly the data corner counting needs.  Each
/// qualifying triangle pair yields the two diagonal smoothings.
struct Channel {
    int tri_a = -1, tri_b = -1;
    Edge shared;
    int end_a = -1, end_b = -1;
    Edge attach_a, attach_b;

    int other_end(int v) const { return v == end_a ? end_b : end_a; }
    const Edge& attach_at(int v) const { return v == end_a ? attach_a : attach_b; }
    bool touches(int v) const { return end_a == v || end_b == v; }

    friend bool operator==(const Channel& x, const Channel& y) {
        return x.tri_a == y.tri_a && x.tri_b == y.tri_b && x.attach_a == y.attach_a &&
               x.attach_b == y.attach_b;
    }
};

/// All channels of the diagram, both smoothings per triangle pair, in a
/// deterministic order.
std::vector<Channel> find_channels(const Diagram& d);

struct PathArc {
    bool is_channel = false;
    Edge edge;        // when !is_channel
    Channel channel;  // when is_channel

    // Endpoints of the arc as path vertices.
    int end_u() const { return is_channel ? channel.end_a : edge.a; }
    int end_v() const { return is_channel ? channel.end_b : edge.b; }
    bool touches(int v) const { return end_u() == v || end_v() == v; }
    // The edge this arc occupies at vertex v, for corner counting.
    Edge effective_edge(int v) const { return is_channel ? channel.attach_at(v) : edge; }
};

/// A path from 1/0 to the terminal vertex: consecutive arcs share a vertex,
/// no vertex repeats.  Corner numbers live at interior vertices.
struct DiagramPath {
    std::vector<PathArc> arcs;
    std::vector<int> vertices;  // length arcs.size() + 1
};

/// Corner number of an interior path vertex: the number of triangles in the
/// angular sector between the two incident arcs.  Throws NotOnPath for
/// endpoints and vertices not on the path.
int corner_number(const Diagram& d, const DiagramPath& path, int vertex);

/// An allowable path: at least one channel and corner number >= 2 at every
/// interior vertex.  `max_corner` is the largest corner over all interior
/// vertices; a value above 2 is the small-Seifert obstruction witness.
struct AllowableCertificate {
    DiagramPath path;
    int channel_count = 0;
    int min_corner = 2;
    int max_corner = 2;
    std::optional<int> witness_vertex;
    std::map<int, int> corners;  // interior vertex -> corner number
};

/// Validate an arc sequence as an allowable path; returns nullopt when the
/// arcs do not chain from 1/0 to the terminal vertex, revisit a vertex,
/// have a corner below 2, or use no channel.
std::optional<AllowableCertificate> make_certificate(const Diagram& d,
                                                     const std::vector<PathArc>& arcs);

/// Depth-first enumeration of every allowable path, deterministic order.
/// `visit` returns false to stop early.  Throws BoundExceeded when more than
/// `max_nodes` search nodes are expanded.
void enumerate_allowable_paths(const Diagram& d, long long max_nodes,
                               const std::function<bool(const AllowableCertificate&)>& visit);

/// Convenience collector over the enumeration.
std::vector<AllowableCertificate> all_allowable_paths(const Diagram& d, long long max_nodes);

/// Constructive allowable path for the diagram of an all-even expansion of a
/// canonical knot fraction (p even, q odd, 1 < p < q-1): a boundary run, one
/// channel at the first sign change (or inside the first fan with a term of
/// at least 4), and a boundary run to the end.  Throws AllTwosExpansion when
/// every term is 2.
AllowableCertificate obstruction_path(const Diagram& d);

struct WhiteheadPathResult {
    Diagram diagram;
    AllowableCertificate certificate;
    bool mirrored = false;  // r > 0 was replaced by -r
    i64 twist = 0;          // the r actually used (after mirroring)
};

/// Two-channel allowable path in the diagram of the twisted Whitehead link
/// with r half-twists ([2, r, -2] for even r, [2, r+1, 2] for odd r, after
/// mirroring positive r).  Throws TooFewTwists when |r| <= 2.
WhiteheadPathResult twisted_whitehead_path(i64 r);

std::string certificate_to_json(const Diagram& d, const AllowableCertificate& cert);

}  // namespace twobridge
