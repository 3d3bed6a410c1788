#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "walkdet/chain.hpp"

namespace walkdet::graphs {

// Directed edge list, 0-based internally (file formats are 1-based). For
// undirected graphs both orientations are stored; self-loops appear once.
struct Graph {
    int m = 0;
    std::vector<std::pair<int, int>> edges;
    bool directed = false;
};

Graph gen_cycle(int n);

// 4-neighbor lattice. With self_loops, every node also gets a loop edge, so
// the uniform walk may stay in place; that is the aperiodic variant whose
// 32x32 entropy rate matches the benchmark value (~1.59 nats).
Graph gen_grid(int w, int h, bool self_loops = false);

// Uniform points in the unit square, edge iff distance <= radius. Retries
// with derived seeds (100 attempts) until connected.
Graph gen_rgg(int n, double radius, std::uint64_t seed);

// Ring lattice with k nearest neighbors, each clockwise edge rewired with
// probability p_rewire. Connectivity enforced as in gen_rgg.
Graph gen_watts_strogatz(int n, int k, double p_rewire, std::uint64_t seed);

// p_ij = (1 - lazy)/outdeg(i) for out-neighbors, plus `lazy` on the diagonal.
MarkovChain uniform_walk_chain(const Graph& g, double lazy = 0.0);

}  // namespace walkdet::graphs
