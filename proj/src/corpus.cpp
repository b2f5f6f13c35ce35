#include "hyperrig/corpus.hpp"

#include <algorithm>
#include <sstream>

namespace hyperrig {

namespace {

std::vector<int> shuffled_indices(int n, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.uniform_int(0, i))]);
    return order;
}

const char* class_name(ActionClass cls) {
    switch (cls) {
    case ActionClass::Unital: return "unital";
    case ActionClass::SubUnital: return "sub-unital";
    case ActionClass::Zero: return "zero";
    }
    return "?";
}

} // namespace

std::vector<CorpusCase> correspondence_corpus(int count, std::uint64_t seed) {
    std::vector<CorpusCase> out;
    out.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);

    for (int idx = 0; idx < count; ++idx) {
        const ActionClass cls = static_cast<ActionClass>(idx % 3);

        const int b = rng.uniform_int(1, 3);
        std::vector<int> sizes(static_cast<std::size_t>(b));
        for (int j = 0; j < b; ++j) sizes[static_cast<std::size_t>(j)] = rng.uniform_int(1, 3);
        MultiMatrixAlgebra algebra(sizes);

        Eigen::MatrixXi copies = Eigen::MatrixXi::Zero(b, b);
        std::vector<int> mult(static_cast<std::size_t>(b), 0);

        if (cls == ActionClass::Zero) {
            // Degenerate by construction once the module is nonzero; kept
            // small because every basis pair of a zero action contributes a
            // full-size defect.
            bool nonzero = false;
            for (int i = 0; i < b; ++i) {
                mult[static_cast<std::size_t>(i)] = rng.uniform_int(0, 2);
                nonzero = nonzero || mult[static_cast<std::size_t>(i)] > 0;
            }
            if (!nonzero) mult[static_cast<std::size_t>(rng.uniform_int(0, b - 1))] = 1;
        } else {
            const int cap = cls == ActionClass::Unital ? 4 : 3;
            for (int i = 0; i < b; ++i) {
                int budget = rng.uniform_int(0, cap);
                for (int j : shuffled_indices(b, rng)) {
                    const int n = algebra.block_size(j);
                    if (n > budget) continue;
                    const int c = rng.uniform_int(0, budget / n);
                    copies(i, j) = c;
                    budget -= c * n;
                }
                int used = 0;
                for (int j = 0; j < b; ++j) used += copies(i, j) * algebra.block_size(j);
                mult[static_cast<std::size_t>(i)] = used;
            }
            if (cls == ActionClass::SubUnital) {
                const int pick = rng.uniform_int(0, b - 1);
                for (int i = 0; i < b; ++i) {
                    const int pad = (i == pick) ? 1 : rng.uniform_int(0, 1);
                    mult[static_cast<std::size_t>(i)] += pad;
                }
            }
        }

        std::ostringstream label;
        label << "case " << idx << ": blocks=" << b << " sizes=[";
        for (int j = 0; j < b; ++j) label << (j ? "," : "") << sizes[static_cast<std::size_t>(j)];
        label << "] mults=[";
        for (int i = 0; i < b; ++i) label << (i ? "," : "") << mult[static_cast<std::size_t>(i)];
        label << "] class=" << class_name(cls);

        out.push_back({Correspondence::from_multiplicities(algebra, mult, copies), cls, label.str()});
    }
    return out;
}

std::vector<Multigraph> finite_graph_corpus(int count, std::uint64_t seed) {
    std::vector<Multigraph> out;
    out.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);
    for (int idx = 0; idx < count; ++idx) {
        const int n = rng.uniform_int(1, 5);
        std::vector<std::string> vertices;
        for (int v = 0; v < n; ++v) vertices.push_back("v" + std::to_string(v + 1));
        std::map<std::pair<std::string, std::string>, EdgeCount> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (rng.uniform() < 0.4)
                    edges[{vertices[static_cast<std::size_t>(u)],
                           vertices[static_cast<std::size_t>(v)]}] =
                        EdgeCount::of(static_cast<std::uint64_t>(rng.uniform_int(1, 3)));
        out.emplace_back(vertices, edges);
    }
    return out;
}

std::vector<Multigraph> infinite_graph_examples() {
    std::vector<Multigraph> out;
    out.emplace_back(std::vector<std::string>{"v"},
                     std::map<std::pair<std::string, std::string>, EdgeCount>{
                         {{"v", "v"}, EdgeCount::inf()}});
    out.emplace_back(std::vector<std::string>{"u", "v"},
                     std::map<std::pair<std::string, std::string>, EdgeCount>{
                         {{"u", "v"}, EdgeCount::inf()}});
    out.emplace_back(std::vector<std::string>{"a", "b", "c"},
                     std::map<std::pair<std::string, std::string>, EdgeCount>{
                         {{"a", "b"}, EdgeCount::of(2)},
                         {{"b", "c"}, EdgeCount::inf()},
                         {{"c", "a"}, EdgeCount::of(1)}});
    return out;
}

GeneratedModule random_generated_module(Rng& rng, int max_generators) {
    const int gen_count = rng.uniform_int(1, max_generators);
    const int b = rng.uniform_int(1, 3);
    std::vector<int> sizes(static_cast<std::size_t>(b));
    std::vector<int> mult(static_cast<std::size_t>(b));
    bool nonzero = false;
    for (int i = 0; i < b; ++i) {
        sizes[static_cast<std::size_t>(i)] = rng.uniform_int(1, 3);
        // Keep m_i <= G n_i so that G random generators span the block.
        const int cap = std::min(4, gen_count * sizes[static_cast<std::size_t>(i)]);
        mult[static_cast<std::size_t>(i)] = rng.uniform_int(0, cap);
        nonzero = nonzero || mult[static_cast<std::size_t>(i)] > 0;
    }
    if (!nonzero) mult[0] = std::min(4, gen_count * sizes[0]);

    MultiMatrixAlgebra algebra(sizes);
    HilbertModule module(algebra, mult);
    GeneratedModule out{module, {}};
    out.generators.reserve(static_cast<std::size_t>(gen_count));
    for (int g = 0; g < gen_count; ++g) out.generators.push_back(random_element(module, rng));
    return out;
}

} // namespace hyperrig
