#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace parac {

using VertexId = std::int32_t;
using Index = std::int64_t;

struct Triplet {
  VertexId row = 0;
  VertexId col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

// Weighted undirected graph backing a Laplacian matrix: off-diagonals are
// -w_ij with w_ij > 0. Diagonal entries are never stored; l_kk is always the
// weighted degree. Immutable once built and safe to share across threads.
// Parallel edges do not exist here; multiplicities only arise in the working
// multigraph during factorization.
class LaplacianGraph {
 public:
  LaplacianGraph() = default;

  // Builds from unique undirected edges (i < j). Throws on self-loops,
  // non-positive weights, or duplicate pairs.
  static LaplacianGraph from_edges(VertexId n, std::span<const Triplet> edges);

  VertexId num_vertices() const { return n_; }
  Index num_edges() const { return static_cast<Index>(adj_to_.size()) / 2; }

  Index degree(VertexId v) const { return ptr_[v + 1] - ptr_[v]; }
  double weighted_degree(VertexId v) const { return wdeg_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_to_.data() + ptr_[v], static_cast<std::size_t>(degree(v))};
  }
  std::span<const double> weights(VertexId v) const {
    return {adj_w_.data() + ptr_[v], static_cast<std::size_t>(degree(v))};
  }

  // Off-diagonal nonzero count of the matrix (both halves).
  Index nnz_off_diagonal() const { return static_cast<Index>(adj_to_.size()); }
  // Lower-triangle off-diagonal count (= number of undirected edges).
  Index nnz_lower() const { return num_edges(); }

  // Undirected edge list, one entry per pair with row < col, value = -w.
  std::vector<Triplet> lower_triplets() const;

 private:
  VertexId n_ = 0;
  std::vector<Index> ptr_;        // n+1 offsets into adjacency arrays
  std::vector<VertexId> adj_to_;  // neighbor ids, ascending within a vertex
  std::vector<double> adj_w_;
  std::vector<double> wdeg_;  // derived diagonal
};

// Validates a symmetric matrix given as triplets and returns its graph.
// Diagonal entries are required for the row-sum check but are then discarded;
// the graph recomputes them from off-diagonals. Duplicate off-diagonal
// triplets are summed, explicit zeros dropped.
//
// Throws Error with code:
//   asymmetric_input      -- (i,j) present without matching (j,i)
//   positive_off_diagonal -- off-diagonal entry > 0
//   row_sum_violation     -- |row sum| > 1e-10 * ||row||_1
LaplacianGraph validate_laplacian(VertexId n, std::span<const Triplet> triplets);

struct ComponentInfo {
  std::vector<VertexId> label;  // per-vertex component id, 0-based
  VertexId count = 0;
};

ComponentInfo connected_components(const LaplacianGraph& graph);

}  // namespace parac
