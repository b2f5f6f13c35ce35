#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrig/graph.hpp"

namespace hyperrig {

enum class ActionClass { Unital, SubUnital, Zero };

struct CorpusCase {
    Correspondence corr;
    ActionClass cls;
    std::string label;
};

/// Deterministic corpus of small correspondences (at most 3 algebra blocks of
/// size at most 3, module multiplicities at most 4). The left actions cycle
/// through unital (no padding anywhere), strictly sub-unital (padding on at
/// least one block) and zero classes.
std::vector<CorpusCase> correspondence_corpus(int count, std::uint64_t seed);

/// Random finite multigraphs, at most 5 vertices with multiplicities up to 3.
std::vector<Multigraph> finite_graph_corpus(int count, std::uint64_t seed);

/// Hand-picked graphs with at least one infinite receiver.
std::vector<Multigraph> infinite_graph_examples();

struct GeneratedModule {
    HilbertModule module;
    std::vector<ModuleElement> generators;
};

/// A random module with a generating set of 1..max_generators random
/// elements, sized so that random generators span almost surely.
GeneratedModule random_generated_module(Rng& rng, int max_generators = 6);

} // namespace hyperrig
