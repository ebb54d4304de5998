#include "parac/etree.hpp"

#include <algorithm>

#include "parac/factor_par.hpp"

namespace parac {

namespace {

// Longest leaf-to-root path in vertices. Iterative so deep chains (the
// star-center-first pattern fills to a full chain) cannot overflow the stack.
int forest_height(const std::vector<VertexId>& parent) {
  const VertexId n = static_cast<VertexId>(parent.size());
  if (n == 0) return 0;
  std::vector<std::int32_t> depth(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> path;
  int height = 0;
  for (VertexId v = 0; v < n; ++v) {
    VertexId u = v;
    path.clear();
    while (u != -1 && depth[static_cast<std::size_t>(u)] == 0) {
      path.push_back(u);
      u = parent[static_cast<std::size_t>(u)];
    }
    std::int32_t base = (u == -1) ? 0 : depth[static_cast<std::size_t>(u)];
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[static_cast<std::size_t>(*it)] = ++base;
    }
    height = std::max(height, static_cast<int>(depth[static_cast<std::size_t>(v)]));
  }
  return height;
}

}  // namespace

Etree classical_etree(const LaplacianGraph& graph, const Ordering& ordering) {
  const VertexId n = graph.num_vertices();
  Etree tree;
  tree.parent.assign(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> ancestor(static_cast<std::size_t>(n), -1);

  // Ancestor path compression over the pattern's upper triangle, permuted.
  for (VertexId k = 0; k < n; ++k) {
    const VertexId label = ordering.inverse[static_cast<std::size_t>(k)];
    for (VertexId u : graph.neighbors(label)) {
      VertexId i = ordering.perm[static_cast<std::size_t>(u)];
      while (i != -1 && i < k) {
        const VertexId next = ancestor[static_cast<std::size_t>(i)];
        ancestor[static_cast<std::size_t>(i)] = k;
        if (next == -1) tree.parent[static_cast<std::size_t>(i)] = k;
        i = next;
      }
    }
  }
  tree.height = forest_height(tree.parent);
  return tree;
}

Etree sampled_etree(const LdlFactor& factor) {
  const VertexId n = factor.n;
  Etree tree;
  tree.parent.assign(static_cast<std::size_t>(n), -1);

  // Classical ancestor computation over the factor's own pattern. On a fully
  // filled pattern this reduces to "parent = first stored row"; on a sampled
  // pattern it additionally accounts for the ancestry that the dropped fill
  // would have forced, which is what makes every stored G(i, k) an ancestor
  // relation (and the critical path a lower bound on the height).
  //
  // The ancestor sweep needs edges grouped by their later endpoint in
  // ascending order, i.e. the rows of G, so transpose the column pattern
  // first.
  std::vector<Index> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId r : factor.rows) ++row_ptr[static_cast<std::size_t>(r) + 1];
  for (VertexId i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  std::vector<VertexId> row_cols(factor.rows.size());
  {
    std::vector<Index> cursor(row_ptr.begin(), row_ptr.end() - 1);
    for (VertexId k = 0; k < n; ++k) {
      for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
        const VertexId r = factor.rows[static_cast<std::size_t>(p)];
        row_cols[static_cast<std::size_t>(cursor[static_cast<std::size_t>(r)]++)] = k;
      }
    }
  }

  std::vector<VertexId> ancestor(static_cast<std::size_t>(n), -1);
  for (VertexId k = 0; k < n; ++k) {
    for (Index p = row_ptr[k]; p < row_ptr[k + 1]; ++p) {
      VertexId i = row_cols[static_cast<std::size_t>(p)];
      while (i != -1 && i < k) {
        const VertexId next = ancestor[static_cast<std::size_t>(i)];
        ancestor[static_cast<std::size_t>(i)] = k;
        if (next == -1) tree.parent[static_cast<std::size_t>(i)] = k;
        i = next;
      }
    }
  }
  tree.height = forest_height(tree.parent);
  return tree;
}

Etree first_row_tree(const LdlFactor& factor) {
  Etree tree;
  tree.parent.assign(static_cast<std::size_t>(factor.n), -1);
  for (VertexId k = 0; k < factor.n; ++k) {
    if (factor.col_ptr[k] < factor.col_ptr[k + 1]) {
      // Rows are ascending within a column.
      tree.parent[static_cast<std::size_t>(k)] =
          factor.rows[static_cast<std::size_t>(factor.col_ptr[k])];
    }
  }
  tree.height = forest_height(tree.parent);
  return tree;
}

int critical_path(const LdlFactor& factor) {
  const VertexId n = factor.n;
  if (n == 0) return 0;
  // level[i] = longest path ending at i; every DAG edge k -> i has k < i, so
  // one ascending sweep settles the levels.
  std::vector<std::int32_t> level(static_cast<std::size_t>(n), 1);
  int longest = 1;
  for (VertexId k = 0; k < n; ++k) {
    const std::int32_t reach = level[static_cast<std::size_t>(k)] + 1;
    for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
      const VertexId i = factor.rows[static_cast<std::size_t>(p)];
      level[static_cast<std::size_t>(i)] =
          std::max(level[static_cast<std::size_t>(i)], reach);
    }
    longest = std::max(longest, static_cast<int>(level[static_cast<std::size_t>(k)]));
  }
  return longest;
}

double fill_ratio(const LaplacianGraph& graph, const LdlFactor& factor) {
  const double nnz_g = static_cast<double>(factor.nnz());
  const double nnz_l =
      static_cast<double>(graph.nnz_off_diagonal() + graph.num_vertices());
  return 2.0 * nnz_g / nnz_l;
}

EtreeReport analyze_structure(const LaplacianGraph& graph, const Ordering& ordering,
                              const LdlFactor& factor) {
  EtreeReport report;
  report.classical_height = classical_etree(graph, ordering).height;
  report.sampled_height = sampled_etree(factor).height;
  report.first_row_height = first_row_tree(factor).height;
  report.critical_path = critical_path(factor);
  report.fill_ratio = fill_ratio(graph, factor);
  report.schedule_depth = schedule_depth(factor);
  return report;
}

}  // namespace parac
