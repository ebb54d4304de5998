#include "parac/factor.hpp"

#include <cstring>
#include <string>

#include "parac/error.hpp"

namespace parac {

bool LdlFactor::same_values(const LdlFactor& other) const {
  return n == other.n && col_ptr == other.col_ptr && rows == other.rows &&
         values == other.values && diag == other.diag && perm == other.perm;
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t bytes) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t LdlFactor::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, &n, sizeof(n));
  h = fnv1a(h, col_ptr.data(), col_ptr.size() * sizeof(Index));
  h = fnv1a(h, rows.data(), rows.size() * sizeof(VertexId));
  h = fnv1a(h, values.data(), values.size() * sizeof(double));
  h = fnv1a(h, diag.data(), diag.size() * sizeof(double));
  return h;
}

Eigen::MatrixXd dense_reconstruct(const LdlFactor& factor, VertexId dense_cap) {
  const VertexId n = factor.n;
  if (n > dense_cap) {
    throw Error(Errc::too_large_for_dense,
                std::to_string(n) + " vertices exceeds dense cap " + std::to_string(dense_cap));
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (VertexId k = 0; k < n; ++k) {
    for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
      g(factor.rows[static_cast<std::size_t>(p)], k) = factor.values[static_cast<std::size_t>(p)];
    }
  }
  Eigen::VectorXd d(n);
  for (VertexId k = 0; k < n; ++k) d(k) = factor.diag[static_cast<std::size_t>(k)];
  Eigen::MatrixXd in_positions = g * d.asDiagonal() * g.transpose();

  // Map positions back to the original labels.
  Eigen::MatrixXd out(n, n);
  const auto& perm = factor.perm;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = 0; j < n; ++j) {
      out(i, j) = in_positions(perm[static_cast<std::size_t>(i)],
                               perm[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

Eigen::MatrixXd dense_laplacian(const LaplacianGraph& graph, VertexId dense_cap) {
  const VertexId n = graph.num_vertices();
  if (n > dense_cap) {
    throw Error(Errc::too_large_for_dense,
                std::to_string(n) + " vertices exceeds dense cap " + std::to_string(dense_cap));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (VertexId v = 0; v < n; ++v) {
    const auto nbrs = graph.neighbors(v);
    const auto w = graph.weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out(v, nbrs[i]) = -w[i];
    }
    out(v, v) = graph.weighted_degree(v);
  }
  return out;
}

}  // namespace parac
