#pragma once

#include <vector>

#include "parac/factor.hpp"
#include "parac/graph.hpp"
#include "parac/ordering.hpp"

namespace parac {

// parent[p] is the elimination position of p's parent, -1 for roots. Height
// counts vertices on the longest leaf-to-root path (single vertex = 1).
struct Etree {
  std::vector<VertexId> parent;
  int height = 0;
};

// Elimination tree of the fully filled classical Cholesky pattern under the
// given ordering, computed from the graph pattern alone by ancestor path
// compression.
Etree classical_etree(const LaplacianGraph& graph, const Ordering& ordering);

// Elimination tree of the factor's own (sampled) pattern, via the same
// ancestor computation as classical_etree. Every stored G(i, k) is an
// ancestor relation in this tree, so its height bounds the critical path
// from above; on a fully filled pattern it coincides with the
// first-stored-row forest.
Etree sampled_etree(const LdlFactor& factor);

// The forest linking each column directly to its first stored row. Shorter
// than sampled_etree on sampled patterns (it ignores ancestry the dropped
// fill would have forced) and is the metric on which sparsified factors show
// their height reduction against the classical tree.
Etree first_row_tree(const LdlFactor& factor);

// Longest path, counted in vertices, of the DAG with an edge k -> i for every
// stored G(i, k).
int critical_path(const LdlFactor& factor);

// 2 * nnz(G) / nnz(L), both counts including diagonals.
double fill_ratio(const LaplacianGraph& graph, const LdlFactor& factor);

struct EtreeReport {
  int classical_height = 0;
  int sampled_height = 0;   // satisfies critical_path <= sampled <= classical
  int first_row_height = 0; // direct-link forest; shows the sampling reduction
  int critical_path = 0;
  double fill_ratio = 0.0;
  int schedule_depth = 0;
};

EtreeReport analyze_structure(const LaplacianGraph& graph, const Ordering& ordering,
                              const LdlFactor& factor);

}  // namespace parac
