#include "parac/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "parac/error.hpp"
#include "parac/rng.hpp"

namespace parac {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void subtract_mean(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

}  // namespace

std::vector<double> apply_preconditioner(const LdlFactor& factor, std::span<const double> r) {
  const VertexId n = factor.n;
  if (static_cast<VertexId>(r.size()) != n) {
    throw Error(Errc::dimension_mismatch, "vector length " + std::to_string(r.size()) +
                                              " vs factor size " + std::to_string(n));
  }
  // Into elimination positions.
  std::vector<double> y(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    y[static_cast<std::size_t>(factor.perm[static_cast<std::size_t>(v)])] =
        r[static_cast<std::size_t>(v)];
  }
  // Forward: G y' = y (unit lower triangular, columns scatter downward).
  for (VertexId k = 0; k < n; ++k) {
    const double yk = y[static_cast<std::size_t>(k)];
    if (yk == 0.0) continue;
    for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
      y[static_cast<std::size_t>(factor.rows[static_cast<std::size_t>(p)])] -=
          factor.values[static_cast<std::size_t>(p)] * yk;
    }
  }
  // Pseudo-inverse diagonal: zero diagonal entries map to zero.
  for (VertexId k = 0; k < n; ++k) {
    const double d = factor.diag[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(k)] = d > 0.0 ? y[static_cast<std::size_t>(k)] / d : 0.0;
  }
  // Backward: G^T z = y (rows of G^T are columns of G).
  for (VertexId k = n; k-- > 0;) {
    double acc = y[static_cast<std::size_t>(k)];
    for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
      acc -= factor.values[static_cast<std::size_t>(p)] *
             y[static_cast<std::size_t>(factor.rows[static_cast<std::size_t>(p)])];
    }
    y[static_cast<std::size_t>(k)] = acc;
  }
  // Back to original labels.
  std::vector<double> z(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    z[static_cast<std::size_t>(v)] =
        y[static_cast<std::size_t>(factor.perm[static_cast<std::size_t>(v)])];
  }
  return z;
}

std::vector<double> laplacian_apply(const LaplacianGraph& graph, std::span<const double> x) {
  const VertexId n = graph.num_vertices();
  if (static_cast<VertexId>(x.size()) != n) {
    throw Error(Errc::dimension_mismatch, "vector length " + std::to_string(x.size()) +
                                              " vs graph size " + std::to_string(n));
  }
  std::vector<double> y(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    const auto nbrs = graph.neighbors(v);
    const auto w = graph.weights(v);
    double acc = graph.weighted_degree(v) * x[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      acc -= w[i] * x[static_cast<std::size_t>(nbrs[i])];
    }
    y[static_cast<std::size_t>(v)] = acc;
  }
  return y;
}

std::pair<std::vector<double>, SolveReport> pcg_solve(const LaplacianGraph& graph,
                                                      const LdlFactor& factor,
                                                      std::span<const double> b,
                                                      const SolveConfig& config) {
  const VertexId n = graph.num_vertices();
  if (static_cast<VertexId>(b.size()) != n || factor.n != n) {
    throw Error(Errc::dimension_mismatch, "solver inputs disagree on size");
  }
  if (connected_components(graph).count > 1) {
    throw Error(Errc::not_connected, "pcg requires a connected graph");
  }
  const auto start_time = std::chrono::steady_clock::now();
  SolveReport report;

  // Project the right side onto the range of L (mean zero).
  std::vector<double> rhs(b.begin(), b.end());
  subtract_mean(rhs);
  const double b_norm = norm2(rhs);
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (b_norm == 0.0) {
    report.converged = true;
    report.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
    return {std::move(x), report};
  }

  std::vector<double> r = rhs;
  std::vector<double> z = apply_preconditioner(factor, r);
  std::vector<double> p = z;
  double rz = dot(r, z);

  std::vector<double> best_x = x;
  double best_norm = norm2(r);
  int iters = 0;
  while (iters < config.max_iters) {
    if (norm2(r) <= config.tol * b_norm) break;
    ++iters;
    const std::vector<double> lp = laplacian_apply(graph, p);
    const double p_lp = dot(p, lp);
    if (!(p_lp > 0.0)) break;  // numerically exhausted search direction
    const double alpha = rz / p_lp;
    for (VertexId i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] -= alpha * lp[static_cast<std::size_t>(i)];
    }
    const double r_norm = norm2(r);
    if (r_norm < best_norm) {
      best_norm = r_norm;
      best_x = x;
    }
    z = apply_preconditioner(factor, r);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (VertexId i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)] =
          z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
    }
  }

  // Report the recomputed residual of the better iterate, not the recurrence.
  double recurrence_norm = norm2(r);
  if (recurrence_norm > best_norm) {
    x = best_x;
    recurrence_norm = best_norm;
  }
  report.recurrence_residual = recurrence_norm / b_norm;
  subtract_mean(x);
  std::vector<double> lx = laplacian_apply(graph, x);
  std::vector<double> true_r(static_cast<std::size_t>(n));
  for (VertexId i = 0; i < n; ++i) {
    true_r[static_cast<std::size_t>(i)] =
        rhs[static_cast<std::size_t>(i)] - lx[static_cast<std::size_t>(i)];
  }
  report.iterations = iters;
  report.relative_residual = norm2(true_r) / b_norm;
  report.converged = report.relative_residual <= config.tol;
  report.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return {std::move(x), report};
}

std::vector<double> make_rhs(const LaplacianGraph& graph, RhsMode mode, std::uint64_t seed) {
  const VertexId n = graph.num_vertices();
  std::vector<double> v(static_cast<std::size_t>(n));
  const std::uint64_t s = derive_seed(seed, kSaltRhs);
  // Box-Muller over the counter stream keeps this reproducible everywhere.
  for (VertexId i = 0; i < n; ++i) {
    const double u1 = SampleStream::unit_uniform(s, i, 0);
    const double u2 = SampleStream::unit_uniform(s, i, 1);
    v[static_cast<std::size_t>(i)] =
        std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(6.283185307179586 * u2);
  }
  if (mode == RhsMode::from_random_x) {
    return laplacian_apply(graph, v);
  }
  subtract_mean(v);
  return v;
}

}  // namespace parac
