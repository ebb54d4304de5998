#pragma once

// Internal machinery shared by the sequential and parallel factorization
// backends. Everything here is keyed by elimination position, not vertex
// label: positions make "earlier/later" comparisons trivial and give all
// backends one canonical index space, which is what the byte-identity
// contract between them rests on.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "parac/factor.hpp"
#include "parac/graph.hpp"
#include "parac/ordering.hpp"
#include "parac/rng.hpp"
#include "parac/sampling.hpp"

namespace parac::detail {

// Input adjacency relabeled to positions. Only the forward (later-position)
// half is kept: an edge is consumed exactly once, by its earlier endpoint.
struct PosGraph {
  VertexId n = 0;
  std::vector<Index> fwd_ptr;       // n+1
  std::vector<VertexId> fwd_to;     // positions > p, ascending within p
  std::vector<double> fwd_w;
  std::vector<std::int32_t> earlier_degree;  // initial dependency counts
};

inline PosGraph build_pos_graph(const LaplacianGraph& graph, const Ordering& ordering) {
  const VertexId n = graph.num_vertices();
  PosGraph pg;
  pg.n = n;
  pg.fwd_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  pg.earlier_degree.assign(static_cast<std::size_t>(n), 0);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = ordering.perm[static_cast<std::size_t>(v)];
    for (VertexId u : graph.neighbors(v)) {
      const VertexId q = ordering.perm[static_cast<std::size_t>(u)];
      if (q > p) {
        ++pg.fwd_ptr[static_cast<std::size_t>(p) + 1];
      } else {
        ++pg.earlier_degree[static_cast<std::size_t>(p)];
      }
    }
  }
  for (VertexId p = 0; p < n; ++p) pg.fwd_ptr[p + 1] += pg.fwd_ptr[p];
  pg.fwd_to.resize(static_cast<std::size_t>(pg.fwd_ptr[n]));
  pg.fwd_w.resize(static_cast<std::size_t>(pg.fwd_ptr[n]));
  std::vector<Index> cursor(pg.fwd_ptr.begin(), pg.fwd_ptr.end() - 1);
  for (VertexId p = 0; p < n; ++p) {
    const VertexId v = ordering.inverse[static_cast<std::size_t>(p)];
    const auto nbrs = graph.neighbors(v);
    const auto w = graph.weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const VertexId q = ordering.perm[static_cast<std::size_t>(nbrs[i])];
      if (q > p) {
        const Index at = cursor[p]++;
        pg.fwd_to[static_cast<std::size_t>(at)] = q;
        pg.fwd_w[static_cast<std::size_t>(at)] = w[i];
      }
    }
    // Canonical ascending-position order within each vertex.
    const Index lo = pg.fwd_ptr[p];
    const Index hi = cursor[p];
    std::vector<std::pair<VertexId, double>> row;
    row.reserve(static_cast<std::size_t>(hi - lo));
    for (Index t = lo; t < hi; ++t) {
      row.emplace_back(pg.fwd_to[static_cast<std::size_t>(t)],
                       pg.fwd_w[static_cast<std::size_t>(t)]);
    }
    std::sort(row.begin(), row.end());
    for (Index t = lo; t < hi; ++t) {
      pg.fwd_to[static_cast<std::size_t>(t)] = row[static_cast<std::size_t>(t - lo)].first;
      pg.fwd_w[static_cast<std::size_t>(t)] = row[static_cast<std::size_t>(t - lo)].second;
    }
  }
  return pg;
}

// A pending contribution to some later column: either an initial edge
// (source = -1) or a sampled fill emitted by `source`.
struct RawEntry {
  VertexId row = 0;     // the other endpoint (a later position)
  VertexId source = -1; // emitting position, -1 for initial edges
  double weight = 0.0;
};

struct MergedEntry {
  VertexId row = 0;
  double weight = 0.0;
  std::int32_t multiplicity = 0;
};

// Canonical merge: sort by (row, source) and accumulate left to right. The
// (row, source) key is unique -- one eliminator never emits the same pair
// twice -- so the summation order, and hence every bit of the result, is
// schedule independent.
inline void merge_raw(std::vector<RawEntry>& raw, std::vector<MergedEntry>& merged) {
  std::sort(raw.begin(), raw.end(), [](const RawEntry& a, const RawEntry& b) {
    if (a.row != b.row) return a.row < b.row;
    return a.source < b.source;
  });
  merged.clear();
  for (const RawEntry& e : raw) {
    if (!merged.empty() && merged.back().row == e.row) {
      merged.back().weight += e.weight;
      merged.back().multiplicity += 1;
    } else {
      merged.push_back({e.row, e.weight, 1});
    }
  }
}

// Diagonal value: plain left-to-right sum over the row-ascending merged list.
inline double merged_total(const std::vector<MergedEntry>& merged) {
  double sum = 0.0;
  for (const MergedEntry& e : merged) sum += e.weight;
  return sum;
}

// Per-elimination scratch, reused across vertices (and owned per worker in
// the parallel backends).
struct Scratch {
  std::vector<RawEntry> raw;
  std::vector<MergedEntry> merged;
  std::vector<NeighborEntry> by_weight;
  std::vector<double> suffix;
};

// Weight-sorted view of the merged list, feeding the shared sampler.
inline void fill_sorted_view(const std::vector<MergedEntry>& merged,
                             std::vector<NeighborEntry>& by_weight) {
  by_weight.clear();
  by_weight.reserve(merged.size());
  for (const MergedEntry& e : merged) {
    by_weight.push_back({e.row, e.weight, e.multiplicity});
  }
  std::sort(by_weight.begin(), by_weight.end(),
            [](const NeighborEntry& a, const NeighborEntry& b) {
              if (a.weight != b.weight) return a.weight < b.weight;
              return a.vertex < b.vertex;
            });
}

// Sampled weights this small are treated as cut edges so they cannot feed
// denormal arithmetic into later sampling probabilities.
inline constexpr double kDropThreshold = 1e-300;

struct CscBuilder {
  std::vector<Index> col_ptr;
  std::vector<VertexId> rows;
  std::vector<double> values;

  explicit CscBuilder(VertexId n) { col_ptr.assign(static_cast<std::size_t>(n) + 1, 0); }
};

inline LdlFactor assemble_factor(VertexId n, CscBuilder&& csc, std::vector<double>&& diag,
                                 const Ordering& ordering) {
  LdlFactor f;
  f.n = n;
  f.col_ptr = std::move(csc.col_ptr);
  f.rows = std::move(csc.rows);
  f.values = std::move(csc.values);
  f.diag = std::move(diag);
  f.perm = ordering.perm;
  return f;
}

}  // namespace parac::detail
