#include <doctest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "parac/error.hpp"
#include "parac/factor_par.hpp"
#include "parac/factor_seq.hpp"
#include "parac/generators.hpp"
#include "parac/ordering.hpp"
#include "parac/rng.hpp"
#include "support/test_support.hpp"

using namespace parac;
using namespace parac::testing;

namespace {

void check_matches_sequential(const LaplacianGraph& g, const Ordering& o,
                              std::uint64_t seed) {
  const LdlFactor want = factor_randomized(g, o, seed);
  for (int workers : {1, 2, 4, 8}) {
    ParOptions opts;
    opts.workers = workers;
    const LdlFactor left = factor_parallel_left(g, o, seed, opts);
    const LdlFactor right = factor_parallel_right(g, o, seed, opts);
    CHECK_MESSAGE(left.same_values(want), "left backend diverged at workers=", workers);
    CHECK_MESSAGE(right.same_values(want), "right backend diverged at workers=", workers);
  }
}

}  // namespace

TEST_CASE("single worker reproduces the sequential factor") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    LaplacianGraph g = gen_random_connected(60, 120, seed);
    Ordering o = ordering_random(60, seed);
    const LdlFactor want = factor_randomized(g, o, seed);
    ParOptions opts;
    opts.workers = 1;
    CHECK(factor_parallel_left(g, o, seed, opts).same_values(want));
    CHECK(factor_parallel_right(g, o, seed, opts).same_values(want));
  }
}

TEST_CASE("every backend and worker count is byte-identical") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    LaplacianGraph g = gen_random_connected(200, 400, seed * 31 + 1);
    check_matches_sequential(g, ordering_random(200, seed), seed);
    check_matches_sequential(g, ordering_nnz_sort(g, seed), seed + 1);
  }
  // Disconnected inputs factor too.
  LaplacianGraph multi = gen_random_components(120, 4, 60, 5);
  check_matches_sequential(multi, ordering_random(120, 9), 2);
}

TEST_CASE("poisson grid byte identity across backends") {
  PoissonSpec spec;
  spec.n = 16;
  LaplacianGraph g = gen_poisson3d(spec);
  const VertexId n = g.num_vertices();
  check_matches_sequential(g, ordering_nnz_sort(g, 0), 0);
  check_matches_sequential(g, ordering_random(n, 1), 1);
}

TEST_CASE("star center-first dependency trace") {
  // Pick a seed whose first draw pairs leaves 1 and 2: then the sample set is
  // {(1,2), (2,3)} and the counters evolve as
  //   init (0,1,1,1) -> after samples (0,1,2,2) -> after decrements (0,0,1,1).
  LaplacianGraph s = star(3);
  const std::uint64_t sampling_seed = derive_seed(0, kSaltSampling);
  std::uint64_t chosen = 0;
  bool found = false;
  for (std::uint64_t seed = 0; seed < 64 && !found; ++seed) {
    // First draw of vertex 0: u in [0, 2); u >= 1 picks the earlier leaf.
    const double u =
        SampleStream::unit_uniform(derive_seed(seed, kSaltSampling), 0, 0) * 2.0;
    if (u >= 1.0) {
      chosen = seed;
      found = true;
    }
  }
  REQUIRE(found);
  (void)sampling_seed;

  std::vector<std::vector<std::int64_t>> snapshots;
  TestHooks hooks;
  hooks.on_phase = [&](TestHooks::Phase phase, VertexId v,
                       const std::vector<std::int64_t>& dp) {
    if (v == 0 && phase != TestHooks::Phase::gathered) snapshots.push_back(dp);
  };
  ParOptions opts;
  opts.workers = 2;
  opts.hooks = &hooks;
  const LdlFactor f = factor_parallel_left(s, Ordering::identity(4), chosen, opts);

  REQUIRE(snapshots.size() >= 2);
  CHECK(snapshots[0] == std::vector<std::int64_t>{0, 1, 2, 2});  // after samples
  CHECK(snapshots[1] == std::vector<std::int64_t>{0, 0, 1, 1});  // after decrements
  // The sampled fills were (1,2) and (2,3), so the factor is a full chain.
  CHECK(f.rows == std::vector<VertexId>{1, 2, 3, 2, 3});
}

TEST_CASE("arena exhaustion is a clean error") {
  LaplacianGraph g = gen_random_connected(100, 300, 3);
  ParOptions opts;
  opts.workers = 2;
  opts.arena_budget = 64;
  try {
    factor_parallel_left(g, ordering_random(100, 1), 0, opts);
    FAIL("expected ArenaExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::arena_exhausted);
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("workspace exhaustion is a clean error, slots stay consistent") {
  PoissonSpec spec;
  spec.n = 8;
  LaplacianGraph g = gen_poisson3d(spec);
  ParOptions opts;
  opts.workers = 2;
  opts.workspace_capacity = 40;  // far below peak fill demand
  try {
    factor_parallel_right(g, ordering_nnz_sort(g, 0), 0, opts);
    FAIL("expected WorkspaceFull");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::workspace_full);
  }
}

TEST_CASE("identity workspace hashing still produces identical factors") {
  PoissonSpec spec;
  spec.n = 8;
  LaplacianGraph g = gen_poisson3d(spec);
  Ordering o = ordering_nnz_sort(g, 0);
  const LdlFactor want = factor_randomized(g, o, 7);
  ParOptions opts;
  opts.workers = 4;
  opts.identity_hash = true;
  CHECK(factor_parallel_right(g, o, 7, opts).same_values(want));
}

TEST_CASE("stress: delay injection keeps both backends safe") {
  LaplacianGraph g = gen_random_connected(200, 360, 17);
  Ordering o = ordering_random(200, 3);
  const LdlFactor want = factor_randomized(g, o, 5);

  std::atomic<std::uint64_t> delay_state{0};
  TestHooks hooks;
  hooks.verify = true;
  hooks.delay = [&](TestHooks::Phase, VertexId) {
    // Cheap pseudo-random stall to shake up interleavings.
    const std::uint64_t x = delay_state.fetch_add(0x9e3779b9, std::memory_order_relaxed);
    if (x % 7 == 0) {
      std::this_thread::sleep_for(std::chrono::microseconds(x % 50));
    } else if (x % 3 == 0) {
      std::this_thread::yield();
    }
  };
  ParOptions opts;
  opts.workers = 4;
  opts.hooks = &hooks;
  for (int run = 0; run < 25; ++run) {
    CHECK(factor_parallel_left(g, o, 5, opts).same_values(want));
    CHECK(factor_parallel_right(g, o, 5, opts).same_values(want));
  }
}

TEST_CASE("fill counters agree with received fills") {
  LaplacianGraph g = gen_random_connected(150, 300, 23);
  Ordering o = ordering_random(150, 11);
  FactorStats seq_stats;
  factor_randomized(g, o, 9, &seq_stats);
  for (int workers : {1, 4}) {
    ParOptions opts;
    opts.workers = workers;
    FactorStats left_stats;
    FactorStats right_stats;
    factor_parallel_left(g, o, 9, opts, &left_stats);
    factor_parallel_right(g, o, 9, opts, &right_stats);
    CHECK(left_stats.fills_received == seq_stats.fills_received);
    CHECK(right_stats.fills_received == seq_stats.fills_received);
    CHECK(left_stats.samples_emitted == seq_stats.samples_emitted);
    CHECK(right_stats.samples_emitted == seq_stats.samples_emitted);
    CHECK(left_stats.total_fills == seq_stats.total_fills);
  }
}

TEST_CASE("schedule depth hand cases") {
  CHECK(schedule_depth(factor_exact(p3(), Ordering::identity(3))) == 3);
  LaplacianGraph empty = LaplacianGraph::from_edges(6, {});
  CHECK(schedule_depth(factor_randomized(empty, Ordering::identity(6), 0)) == 1);
}
