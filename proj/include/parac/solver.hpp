#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "parac/factor.hpp"
#include "parac/graph.hpp"

namespace parac {

struct SolveConfig {
  double tol = 1e-6;    // relative true-residual target
  int max_iters = 1000;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;    // recomputed ||b - Lx|| / ||b||
  double recurrence_residual = 0.0;  // the recurrence's value at termination
  bool converged = false;
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
};

// z = G^-T D^+ G^-1 r, where D^+ zeroes the positions with D = 0. Input and
// output are in original vertex labels; the factor's stored permutation is
// applied internally.
std::vector<double> apply_preconditioner(const LdlFactor& factor, std::span<const double> r);

// y = L x with a fixed per-row accumulation order.
std::vector<double> laplacian_apply(const LaplacianGraph& graph, std::span<const double> x);

// Preconditioned conjugate gradient on the singular Laplacian. b is projected
// to mean zero, x starts at zero and is returned mean zero. Requires a
// connected graph (throws not_connected). On hitting max_iters the best
// iterate seen is returned with converged = false.
std::pair<std::vector<double>, SolveReport> pcg_solve(const LaplacianGraph& graph,
                                                      const LdlFactor& factor,
                                                      std::span<const double> b,
                                                      const SolveConfig& config = {});

enum class RhsMode { given, random_projected, from_random_x };

// random_projected: standard normal minus its mean. from_random_x: L times a
// standard normal vector. Deterministic given seed.
std::vector<double> make_rhs(const LaplacianGraph& graph, RhsMode mode, std::uint64_t seed);

}  // namespace parac
