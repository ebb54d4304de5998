#include "parac/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parac/error.hpp"

namespace parac {

namespace {

LaplacianGraph build_from_sorted_edges(VertexId n, std::vector<Triplet>&& edges) {
  // edges hold (i, j, w) with i < j, unique pairs, w > 0.
  LaplacianGraph graph = LaplacianGraph::from_edges(n, edges);
  return graph;
}

}  // namespace

LaplacianGraph LaplacianGraph::from_edges(VertexId n, std::span<const Triplet> edges) {
  LaplacianGraph g;
  g.n_ = n;
  g.ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const Triplet& e : edges) {
    if (e.row == e.col) {
      throw Error(Errc::internal_error, "self-loop edge " + std::to_string(e.row));
    }
    if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) {
      throw Error(Errc::internal_error, "edge endpoint out of range");
    }
    if (!(e.value > 0.0)) {
      throw Error(Errc::internal_error,
                  "non-positive edge weight at (" + std::to_string(e.row) + ", " +
                      std::to_string(e.col) + ")");
    }
    ++g.ptr_[static_cast<std::size_t>(e.row) + 1];
    ++g.ptr_[static_cast<std::size_t>(e.col) + 1];
  }
  for (VertexId v = 0; v < n; ++v) g.ptr_[v + 1] += g.ptr_[v];

  const Index nnz = g.ptr_[n];
  g.adj_to_.resize(static_cast<std::size_t>(nnz));
  g.adj_w_.resize(static_cast<std::size_t>(nnz));
  std::vector<Index> cursor(g.ptr_.begin(), g.ptr_.end() - 1);
  auto place = [&](VertexId from, VertexId to, double w) {
    const Index at = cursor[from]++;
    g.adj_to_[static_cast<std::size_t>(at)] = to;
    g.adj_w_[static_cast<std::size_t>(at)] = w;
  };
  for (const Triplet& e : edges) {
    place(e.row, e.col, e.value);
    place(e.col, e.row, e.value);
  }

  // Canonical neighbor order; also rejects duplicate pairs.
  g.wdeg_.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<std::pair<VertexId, double>> row;
  for (VertexId v = 0; v < n; ++v) {
    row.clear();
    for (Index p = g.ptr_[v]; p < g.ptr_[v + 1]; ++p) {
      row.emplace_back(g.adj_to_[static_cast<std::size_t>(p)],
                       g.adj_w_[static_cast<std::size_t>(p)]);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].first == row[i - 1].first) {
        throw Error(Errc::internal_error,
                    "duplicate edge (" + std::to_string(v) + ", " +
                        std::to_string(row[i].first) + ")");
      }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Index at = g.ptr_[v] + static_cast<Index>(i);
      g.adj_to_[static_cast<std::size_t>(at)] = row[i].first;
      g.adj_w_[static_cast<std::size_t>(at)] = row[i].second;
      sum += row[i].second;
    }
    g.wdeg_[static_cast<std::size_t>(v)] = sum;
  }
  return g;
}

std::vector<Triplet> LaplacianGraph::lower_triplets() const {
  std::vector<Triplet> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (VertexId v = 0; v < n_; ++v) {
    for (Index p = ptr_[v]; p < ptr_[v + 1]; ++p) {
      const VertexId u = adj_to_[static_cast<std::size_t>(p)];
      if (u < v) {
        out.push_back({v, u, -adj_w_[static_cast<std::size_t>(p)]});
      }
    }
  }
  return out;
}

LaplacianGraph validate_laplacian(VertexId n, std::span<const Triplet> triplets) {
  // Merge duplicates, drop explicit zeros, keep diagonals apart for the
  // row-sum check.
  std::vector<Triplet> off;
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row_abs(static_cast<std::size_t>(n), 0.0);
  std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);

  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.col < 0 || t.row >= n || t.col >= n) {
      throw Error(Errc::parse_error, "index out of range: (" + std::to_string(t.row) + ", " +
                                         std::to_string(t.col) + ")");
    }
    if (t.value == 0.0) continue;
    if (t.row == t.col) {
      diag[static_cast<std::size_t>(t.row)] += t.value;
    } else {
      off.push_back(t);
    }
  }

  std::sort(off.begin(), off.end(), [](const Triplet& a, const Triplet& b) {
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(off.size());
  for (const Triplet& t : off) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }

  // Symmetry: merged is sorted by (row, col); the transpose entry is found by
  // binary search.
  auto find = [&](VertexId r, VertexId c) -> const Triplet* {
    Triplet probe{r, c, 0.0};
    auto it = std::lower_bound(merged.begin(), merged.end(), probe,
                               [](const Triplet& a, const Triplet& b) {
                                 if (a.row != b.row) return a.row < b.row;
                                 return a.col < b.col;
                               });
    if (it == merged.end() || it->row != r || it->col != c) return nullptr;
    return &*it;
  };
  for (const Triplet& t : merged) {
    const Triplet* mirror = find(t.col, t.row);
    const double scale = std::max(std::abs(t.value), mirror ? std::abs(mirror->value) : 0.0);
    if (mirror == nullptr || std::abs(mirror->value - t.value) > 1e-12 * scale) {
      throw Error(Errc::asymmetric_input, "row " + std::to_string(t.row) + " entry (" +
                                              std::to_string(t.row) + ", " +
                                              std::to_string(t.col) + ") has no symmetric match");
    }
    if (t.value > 0.0) {
      throw Error(Errc::positive_off_diagonal,
                  "row " + std::to_string(t.row) + " off-diagonal (" + std::to_string(t.row) +
                      ", " + std::to_string(t.col) + ") = " + std::to_string(t.value));
    }
  }

  for (VertexId v = 0; v < n; ++v) {
    row_sum[static_cast<std::size_t>(v)] = diag[static_cast<std::size_t>(v)];
    row_abs[static_cast<std::size_t>(v)] = std::abs(diag[static_cast<std::size_t>(v)]);
  }
  for (const Triplet& t : merged) {
    row_sum[static_cast<std::size_t>(t.row)] += t.value;
    row_abs[static_cast<std::size_t>(t.row)] += std::abs(t.value);
  }
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t i = static_cast<std::size_t>(v);
    if (std::abs(row_sum[i]) > 1e-10 * row_abs[i]) {
      throw Error(Errc::row_sum_violation,
                  "row " + std::to_string(v) + " sums to " + std::to_string(row_sum[i]));
    }
  }

  // Diagonals are discarded here; the graph re-derives them from the edges.
  std::vector<Triplet> edges;
  edges.reserve(merged.size() / 2);
  for (const Triplet& t : merged) {
    if (t.row < t.col) {
      edges.push_back({t.row, t.col, -t.value});
    }
  }
  return build_from_sorted_edges(n, std::move(edges));
}

ComponentInfo connected_components(const LaplacianGraph& graph) {
  const VertexId n = graph.num_vertices();
  ComponentInfo info;
  info.label.assign(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> stack;
  for (VertexId start = 0; start < n; ++start) {
    if (info.label[static_cast<std::size_t>(start)] != -1) continue;
    const VertexId id = info.count++;
    stack.push_back(start);
    info.label[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : graph.neighbors(v)) {
        if (info.label[static_cast<std::size_t>(u)] == -1) {
          info.label[static_cast<std::size_t>(u)] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return info;
}

}  // namespace parac
