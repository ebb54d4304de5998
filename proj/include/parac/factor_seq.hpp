#pragma once

#include <cstdint>
#include <vector>

#include "parac/factor.hpp"
#include "parac/graph.hpp"
#include "parac/ordering.hpp"

namespace parac {

struct FactorOptions {
  // Re-check the working multigraph after every elimination step (positive
  // weights, live endpoints, no self-loops). Meant for small test graphs.
  bool validate_each_step = false;
  // Working-edge cap for the exact (full clique) variant; classical fill can
  // be quadratic.
  Index exact_edge_cap = 10'000'000;
};

// Per-run instrumentation; filled when a non-null pointer is passed.
struct FactorStats {
  std::vector<std::int32_t> merged_degree;    // |N_k| per position at elimination
  std::vector<std::int32_t> samples_emitted;  // per position
  std::vector<std::int32_t> fills_received;   // per position
  std::vector<double> vertex_seconds;         // completion times, when requested
  Index total_fills = 0;
  Index arena_used = 0;    // parallel backends only
  double seconds = 0.0;
};

// Randomized elimination: one spanning-tree sample per vertex. Deterministic
// given (graph, ordering, seed).
LdlFactor factor_randomized(const LaplacianGraph& graph, const Ordering& ordering,
                            std::uint64_t seed, FactorStats* stats = nullptr,
                            const FactorOptions& options = {});

// Full-clique elimination; G D G^T reproduces the input to roundoff. Used as
// the correctness oracle and as an exact preconditioner on small problems.
LdlFactor factor_exact(const LaplacianGraph& graph, const Ordering& ordering,
                       FactorStats* stats = nullptr, const FactorOptions& options = {});

// dp[p] = number of initial neighbors of the vertex at position p that are
// eliminated earlier (one per distinct edge). Indexed by position.
std::vector<std::int32_t> dependency_counts(const LaplacianGraph& graph,
                                            const Ordering& ordering);

}  // namespace parac
