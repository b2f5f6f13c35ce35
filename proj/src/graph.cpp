#include "hyperrig/graph.hpp"

#include <algorithm>
#include <sstream>

#include "hyperrig/errors.hpp"

namespace hyperrig {

Multigraph::Multigraph(std::vector<std::string> vertices,
                       std::map<std::pair<std::string, std::string>, EdgeCount> edges)
    : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw ValidationError("graph: duplicate vertex label");
    for (const auto& [pair, count] : edges) {
        if (count.is_zero()) continue;
        const int s = index_of(pair.first);
        const int r = index_of(pair.second);
        mult_[{s, r}] = count;
    }
}

int Multigraph::index_of(const std::string& label) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end() || *it != label) {
        std::ostringstream os;
        os << "graph: unknown vertex '" << label << "'";
        throw ValidationError(os.str());
    }
    return static_cast<int>(it - vertices_.begin());
}

EdgeCount Multigraph::multiplicity(int source, int range) const {
    auto it = mult_.find({source, range});
    return it == mult_.end() ? EdgeCount{} : it->second;
}

EdgeCount Multigraph::indegree(int v) const {
    EdgeCount total;
    for (int u = 0; u < vertex_count(); ++u) total += multiplicity(u, v);
    return total;
}

EdgeCount Multigraph::outdegree(int v) const {
    EdgeCount total;
    for (int u = 0; u < vertex_count(); ++u) total += multiplicity(v, u);
    return total;
}

bool Multigraph::all_finite() const {
    for (const auto& [pair, count] : mult_)
        if (count.infinite) return false;
    return true;
}

std::vector<std::string> finite_receivers(const Multigraph& g) {
    std::vector<std::string> out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.indegree(v).infinite) out.push_back(g.label(v));
    return out;
}

std::vector<std::string> regular_vertices(const Multigraph& g) {
    std::vector<std::string> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        const EdgeCount d = g.indegree(v);
        if (!d.infinite && !d.is_zero()) out.push_back(g.label(v));
    }
    return out;
}

GraphVerdict is_hyperrigid(const Multigraph& g) {
    GraphVerdict verdict{true, {}};
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.indegree(v).infinite) {
            verdict.hyperrigid = false;
            verdict.infinite_receivers.push_back(g.label(v));
        }
    }
    return verdict;
}

Multigraph truncate(const Multigraph& g, std::uint64_t cap) {
    if (cap < 1) throw ValidationError("truncate: cap must be at least 1");
    std::map<std::pair<std::string, std::string>, EdgeCount> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = 0; v < g.vertex_count(); ++v) {
            EdgeCount c = g.multiplicity(u, v);
            if (c.infinite) c = EdgeCount::of(cap);
            if (!c.is_zero()) edges[{g.label(u), g.label(v)}] = c;
        }
    return {g.vertices(), std::move(edges)};
}

Correspondence to_correspondence(const Multigraph& g) {
    if (!g.all_finite())
        throw ValidationError("graph correspondence needs finite multiplicities: truncate first");
    const int n = g.vertex_count();
    MultiMatrixAlgebra algebra(std::vector<int>(static_cast<std::size_t>(n), 1));
    std::vector<int> module_mult(static_cast<std::size_t>(n));
    Eigen::MatrixXi copies(n, n);
    for (int v = 0; v < n; ++v) {
        module_mult[static_cast<std::size_t>(v)] = static_cast<int>(g.outdegree(v).value);
        for (int u = 0; u < n; ++u)
            copies(v, u) = static_cast<int>(g.multiplicity(v, u).value);
    }
    return Correspondence::from_multiplicities(algebra, module_mult, copies);
}

} // namespace hyperrig
