#pragma once

#include <cstdint>
#include <string>

#include "parac/graph.hpp"

namespace parac {

enum class PoissonVariant { uniform, anisotropic, contrast };

// 7-point finite-difference Laplacian on an n x n x n grid.
//   uniform:     all edge weights 1
//   anisotropic: z-direction edges carry weight epsilon
//   contrast:    per-cell coefficient log-uniform in [1, contrast_ratio];
//                an edge takes the harmonic mean of its two cells
struct PoissonSpec {
  VertexId n = 2;
  PoissonVariant variant = PoissonVariant::uniform;
  double epsilon = 1e-3;
  double contrast_ratio = 1e4;
  std::uint64_t seed = 0;
  Index budget_vertices = 4'000'000;
};

LaplacianGraph gen_poisson3d(const PoissonSpec& spec);

// "poisson3d:n=32,variant=uniform,epsilon=1e-3,contrast=1e4,seed=0"
PoissonSpec parse_poisson_spec(const std::string& text);

// Random spanning tree plus extra_edges distinct extra edges; weights
// uniform in [0.5, 2.0] unless unit_weights. Deterministic given seed.
LaplacianGraph gen_random_connected(VertexId n, Index extra_edges, std::uint64_t seed,
                                    bool unit_weights = false);

// Disjoint union of `components` random connected blocks covering n vertices.
LaplacianGraph gen_random_components(VertexId n, VertexId components, Index extra_edges,
                                     std::uint64_t seed);

}  // namespace parac
