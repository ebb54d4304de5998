#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "parac/factor.hpp"
#include "parac/factor_seq.hpp"
#include "parac/graph.hpp"
#include "parac/ordering.hpp"

namespace parac {

// Test instrumentation for the parallel backends. All hooks are optional and
// cost nothing when unset.
struct TestHooks {
  enum class Phase { gathered, sampled, decremented };

  // Called with a snapshot of the dependency counters at phase boundaries of
  // each elimination (snapshot is only taken when the callback is set).
  std::function<void(Phase, VertexId, const std::vector<std::int64_t>&)> on_phase;

  // Delay injection point, called between the increment and decrement phases
  // and around queue operations.
  std::function<void(Phase, VertexId)> delay;

  // Enables elimination-order assertions and end-of-run workspace audits.
  bool verify = false;
};

struct ParOptions {
  int workers = 1;
  // Arena size in cells; <0 picks the default derived from the input size.
  Index arena_budget = -1;
  // Scratch table size for the right-looking backend; <0 picks the default.
  Index workspace_capacity = -1;
  // Abort instead of hanging if no elimination completes for this long.
  double watchdog_seconds = 60.0;
  // Place workspace entries by vertex id instead of a seeded random
  // permutation (slower under clustering; kept for comparison).
  bool identity_hash = false;
  // Record per-vertex completion times into FactorStats::vertex_seconds.
  bool record_vertex_times = false;
  const TestHooks* hooks = nullptr;
};

Index default_arena_budget(const LaplacianGraph& graph);
Index default_workspace_capacity(const LaplacianGraph& graph);

// Left-looking parallel elimination: fill-ins travel through per-vertex
// lock-free lists carved out of one bump-allocated arena. Byte-identical to
// factor_randomized for every worker count.
LdlFactor factor_parallel_left(const LaplacianGraph& graph, const Ordering& ordering,
                               std::uint64_t seed, const ParOptions& options = {},
                               FactorStats* stats = nullptr);

// Right-looking parallel elimination: fill-ins are scattered into a fixed
// linear-probing workspace keyed by a seeded permutation and gathered by the
// consuming vertex. Byte-identical to factor_randomized.
LdlFactor factor_parallel_right(const LaplacianGraph& graph, const Ordering& ordering,
                                std::uint64_t seed, const ParOptions& options = {},
                                FactorStats* stats = nullptr);

// ASAP round index per elimination position: a vertex runs in the round
// after its last dependency.
std::vector<std::int32_t> schedule_levels(const LdlFactor& factor);

// Number of elimination rounds if every ready vertex were processed per
// round (ASAP levelization of the factor's dependency DAG).
int schedule_depth(const LdlFactor& factor);

}  // namespace parac
