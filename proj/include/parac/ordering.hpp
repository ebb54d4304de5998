#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parac/graph.hpp"

namespace parac {

// Elimination order: perm maps a vertex label to its elimination position,
// inverse maps a position back to the label eliminated there.
struct Ordering {
  std::vector<VertexId> perm;
  std::vector<VertexId> inverse;

  static Ordering identity(VertexId n);

  // Validates that positions form a bijection on {0..n-1}; throws
  // not_a_permutation otherwise.
  static Ordering from_positions(std::vector<VertexId> positions);

  VertexId size() const { return static_cast<VertexId>(perm.size()); }
};

// Uniform random permutation, deterministic given seed.
Ordering ordering_random(VertexId n, std::uint64_t seed);

// Ascending initial degree; ties within a degree class are permuted uniformly
// at random (seeded).
Ordering ordering_nnz_sort(const LaplacianGraph& graph, std::uint64_t seed);

// Whitespace-separated 0-based positions, one per vertex.
Ordering ordering_from_file(const std::string& path, VertexId n);

void write_permutation(const std::string& path, const Ordering& ordering);

}  // namespace parac
