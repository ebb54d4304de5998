#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "parac/graph.hpp"
#include "parac/ordering.hpp"

namespace parac {

// Unit-lower-triangular factor G (compressed columns, implicit unit diagonal,
// stored values <= 0) and nonnegative diagonal D, both indexed by elimination
// position. perm records the label -> position map the factor was built
// under, so the preconditioner M = G D G^T can be applied to vectors in the
// original labeling.
struct LdlFactor {
  VertexId n = 0;
  std::vector<Index> col_ptr;     // n+1
  std::vector<VertexId> rows;     // positions > column index, ascending
  std::vector<double> values;     // entries of G, <= 0
  std::vector<double> diag;       // D, length n, >= 0
  std::vector<VertexId> perm;     // label -> position

  Index nnz_off_diagonal() const { return static_cast<Index>(rows.size()); }
  // Stored off-diagonals plus the n implicit unit diagonals.
  Index nnz() const { return nnz_off_diagonal() + n; }

  bool same_values(const LdlFactor& other) const;
  std::uint64_t checksum() const;  // FNV-1a over the structural+value arrays
};

// Dense G * D * G^T mapped back to original vertex labels, so the result is
// directly comparable with the input Laplacian. Refuses n > dense_cap.
Eigen::MatrixXd dense_reconstruct(const LdlFactor& factor, VertexId dense_cap = 2048);

// Dense materialization of the graph Laplacian (same cap).
Eigen::MatrixXd dense_laplacian(const LaplacianGraph& graph, VertexId dense_cap = 2048);

}  // namespace parac
