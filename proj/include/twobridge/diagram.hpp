#pragma once

#include <array>
#include <string>
#include <vector>

#include "twobridge/farey.hpp"

namespace twobridge {

// Undirected edge between vertex ids, stored with a <= b.
struct Edge {
    int a = -1;
    int b = -1;
    Edge() = default;
    Edge(int x, int y) : a(x < y ? x : y), b(x < y ? y : x) {}
    bool has(int v) const { return a == v || b == v; }
    int other(int v) const { return a == v ? b : a; }
    friend bool operator==(const Edge& l, const Edge& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator!=(const Edge& l, const Edge& r) { return !(l == r); }
    friend bool operator<(const Edge& l, const Edge& r) { return l.a < r.a || (l.a == r.a && l.b < r.b); }
};

using Triangle = std::array<int, 3>;  // sorted vertex ids

struct Vertex {
    int id = -1;
    Fraction label;
    Parity parity = Parity::OddOdd;
    bool on_top = false;
    bool on_bottom = false;
};

// One fan per expansion term: |term| triangles pivoting around a common apex.
struct Fan {
    i64 term = 0;
    int apex = -1;
    std::vector<int> triangles;  // indices into Diagram::triangles, in rim order
    Edge initial;                // apex--first rim vertex
    Edge terminal;               // apex--last rim vertex
};

/// Triangulated disk built from a continued-fraction expansion by gluing
/// fans along their initial/terminal edges.  All vertices lie on the disk
/// boundary; labels come from the mediant recursion seeded at (1/0, 0/1).
struct Diagram {
    Expansion expansion{std::vector<i64>{1}};
    Fraction fraction;  // evaluate(expansion), the terminal vertex label

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;         // sorted
    std::vector<Triangle> triangles; // sorted triples, sorted list
    std::vector<Fan> fans;
    std::vector<int> top_path;     // vertex ids from 1/0 to fraction, through 0/1
    std::vector<int> bottom_path;  // the other boundary path

    // Rotational star at each vertex: incident edges from one boundary edge
    // to the other; star_tris[v][i] sits between star_edges[v][i] and [i+1].
    std::vector<std::vector<int>> star_edges;
    std::vector<std::vector<int>> star_tris;

    int source = -1;  // id of 1/0
    int sink = -1;    // id of the terminal vertex

    int edge_index(const Edge& e) const;        // -1 when absent
    bool has_edge(int u, int v) const { return edge_index(Edge(u, v)) >= 0; }
    int vertex_of(const Fraction& label) const; // -1 when absent

    // Number of triangles strictly between two incident edges of v in the
    // rotational order (the angular sector through the disk interior).
    int sector_triangles(int v, int edge_a, int edge_b) const;

    // Triangles incident to the pair of an edge, looked up by edge index.
    const std::vector<int>& edge_triangles(int edge_idx) const { return edge_tris_[edge_idx]; }

    bool is_boundary_edge(int edge_idx) const { return edge_tris_[edge_idx].size() == 1; }

    /// Re-checks every structural invariant; throws InternalInconsistency
    /// with a description when one fails.
    void validate() const;

    std::vector<std::vector<int>> edge_tris_;  // per edge index
};

/// Build the diagram of an expansion.  Accepts knot and link fractions.
/// Throws DegenerateExpansion when the expansion (or one of its prefixes)
/// has no finite value, and InternalInconsistency if the fan gluing does
/// not close up into a disk.
Diagram build_diagram(const Expansion& e);

/// Deterministic serializations.
std::string emit_json(const Diagram& d);
std::string emit_dot(const Diagram& d);

}  // namespace twobridge
