#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperrig/correspondence.hpp"

namespace hyperrig {

/// Edge multiplicity in N union {infinity}. Infinite counts are symbolic
/// tokens; any operation that needs matrices demands an explicit truncation.
struct EdgeCount {
    std::uint64_t value = 0;
    bool infinite = false;

    static EdgeCount inf() { return {0, true}; }
    static EdgeCount of(std::uint64_t n) { return {n, false}; }

    bool is_zero() const { return !infinite && value == 0; }

    EdgeCount& operator+=(const EdgeCount& rhs) {
        infinite = infinite || rhs.infinite;
        if (!infinite) value += rhs.value;
        else value = 0;
        return *this;
    }

    bool operator==(const EdgeCount& rhs) const = default;
};

/// Directed multigraph on a finite vertex set. Vertices are arbitrary string
/// labels ordered lexicographically; mult(u, v) counts edges with source u
/// and range v.
class Multigraph {
public:
    Multigraph(std::vector<std::string> vertices,
               std::map<std::pair<std::string, std::string>, EdgeCount> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::string& label(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    int index_of(const std::string& label) const;

    EdgeCount multiplicity(int source, int range) const;
    EdgeCount indegree(int v) const;
    EdgeCount outdegree(int v) const;

    bool all_finite() const;

private:
    std::vector<std::string> vertices_;
    std::map<std::pair<int, int>, EdgeCount> mult_; ///< only nonzero entries
};

/// Vertices receiving finitely many edges (including none): exactly where
/// the left action of the vertex projection is a compact operator.
std::vector<std::string> finite_receivers(const Multigraph& g);

/// Regular vertices, receiving at least one and finitely many edges: the
/// support of the Katsura ideal of the graph correspondence.
std::vector<std::string> regular_vertices(const Multigraph& g);

struct GraphVerdict {
    bool hyperrigid;
    std::vector<std::string> infinite_receivers;
};

/// Discrete criterion: hyperrigid iff no vertex receives infinitely many
/// edges. Offending vertices are listed in the verdict.
GraphVerdict is_hyperrigid(const Multigraph& g);

/// Replaces every infinite multiplicity by cap (cap >= 1); finite
/// multiplicities are unchanged.
Multigraph truncate(const Multigraph& g, std::uint64_t cap);

/// The graph correspondence of a finite multigraph: one 1x1 algebra block
/// per vertex, module multiplicity = outdegree, and the vertex projection
/// acting on an edge coordinate iff the edge's range is that vertex. The
/// edge coordinates of a source block are ordered by range label.
Correspondence to_correspondence(const Multigraph& g);

} // namespace hyperrig
