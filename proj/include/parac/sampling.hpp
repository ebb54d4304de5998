#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "parac/error.hpp"
#include "parac/graph.hpp"
#include "parac/rng.hpp"

namespace parac {

struct NeighborEntry {
  VertexId vertex = 0;
  double weight = 0.0;          // |l_ki|, > 0
  std::int32_t multiplicity = 1;
};

// Merged neighbor list of the vertex being eliminated. total weight = l_kk.
struct NeighborList {
  VertexId owner = -1;
  std::vector<NeighborEntry> entries;
  bool sorted_by_weight = false;

  // Accumulated in ascending-vertex order, the same order the factorization
  // backends use when they write the diagonal.
  double total_weight() const;
};

struct SampledEdge {
  VertexId a = 0;  // the neighbor whose turn emitted the edge
  VertexId b = 0;  // the sampled partner
  double weight = 0.0;
};

// Ascending by weight, ties broken by ascending vertex id.
NeighborList sort_neighbors(NeighborList list);

namespace detail {

// Largest index j in [lo, hi] with suffix[j] > u. suffix is strictly
// decreasing on that range and suffix[lo] > u is guaranteed by the caller.
// A draw landing exactly on suffix[j] therefore resolves to an index < j.
inline std::size_t pick_by_suffix(std::span<const double> suffix, std::size_t lo,
                                  std::size_t hi, double u) {
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    if (suffix[mid] > u) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// Core spanning-tree sampler shared by every backend so they reproduce each
// other bit for bit. `sorted` must be ordered by sort_neighbors; `lkk` is the
// caller's canonical diagonal value. Emits exactly max(m-1, 0) edges.
//
// Iteration i pairs sorted[i] with one of sorted[i+1..], picked with
// probability weight/S where S is the suffix weight sum over those positions.
// Suffix sums are accumulated strictly right to left, once.
template <typename Emit>
void sample_clique_sorted(std::span<const NeighborEntry> sorted, double lkk,
                          std::uint64_t seed, VertexId owner,
                          std::vector<double>& suffix, Emit&& emit) {
  const std::size_t m = sorted.size();
  if (m < 2) return;
  suffix.resize(m);
  suffix[m - 1] = sorted[m - 1].weight;
  for (std::size_t g = m - 1; g-- > 0;) {
    suffix[g] = sorted[g].weight + suffix[g + 1];
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double s = suffix[i + 1];
    const double u = SampleStream::unit_uniform(seed, owner, i) * s;
    const std::size_t j = pick_by_suffix(suffix, i + 1, m - 1, u);
    const double w = s * sorted[i].weight / lkk;
    emit(sorted[i].vertex, sorted[j].vertex, w);
  }
}

}  // namespace detail

// Spanning tree over the neighbors of list.owner; requires a weight-sorted
// list. Deterministic given (list, stream).
std::vector<SampledEdge> sample_clique(const NeighborList& list, const SampleStream& stream);

// Dense Laplacian of the full elimination clique: edge (i, j) carries weight
// w_ki * w_kj / l_kk. Indexed by the neighbor set in ascending-vertex order.
Eigen::MatrixXd exact_clique(const NeighborList& list);

// Exact expectation of sample_clique's output Laplacian, obtained by walking
// every outcome of the draw sequence. Limited to |list| <= 8; throws
// too_many_neighbors above that. Same indexing as exact_clique.
Eigen::MatrixXd enumerate_expectation(const NeighborList& list);

}  // namespace parac
