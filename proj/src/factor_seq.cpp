#include "parac/factor_seq.hpp"

#include <chrono>
#include <string>

#include "factor_common.hpp"
#include "parac/error.hpp"
#include "parac/sampling.hpp"

namespace parac {

namespace {

using detail::MergedEntry;
using detail::PosGraph;
using detail::RawEntry;
using detail::Scratch;

enum class CliqueMode { sampled, exact };

// Checks the elimination-state invariants on the live working multigraph:
// strictly positive weights, no self-loops, both endpoints still live and the
// stored side being the earlier one. Symmetry and zero row sums hold by
// construction for an edge list.
void validate_working_graph(VertexId next_position,
                            const std::vector<std::vector<RawEntry>>& pending,
                            const PosGraph& pg) {
  for (VertexId p = next_position; p < pg.n; ++p) {
    for (Index t = pg.fwd_ptr[p]; t < pg.fwd_ptr[p + 1]; ++t) {
      const VertexId q = pg.fwd_to[static_cast<std::size_t>(t)];
      if (q <= p || !(pg.fwd_w[static_cast<std::size_t>(t)] > 0.0)) {
        throw Error(Errc::internal_error, "working graph: bad initial edge");
      }
    }
    for (const RawEntry& e : pending[static_cast<std::size_t>(p)]) {
      if (e.row <= p || e.row >= pg.n || !(e.weight > 0.0) || e.source >= next_position) {
        throw Error(Errc::internal_error, "working graph: bad fill edge");
      }
    }
  }
}

LdlFactor factor_sequential(const LaplacianGraph& graph, const Ordering& ordering,
                            std::uint64_t seed, CliqueMode mode, FactorStats* stats,
                            const FactorOptions& options) {
  const auto start_time = std::chrono::steady_clock::now();
  const VertexId n = graph.num_vertices();
  if (static_cast<VertexId>(ordering.perm.size()) != n) {
    throw Error(Errc::dimension_mismatch, "ordering size does not match graph");
  }
  const PosGraph pg = detail::build_pos_graph(graph, ordering);
  const std::uint64_t sample_seed = derive_seed(seed, kSaltSampling);

  // pending[p] holds the not-yet-consumed fill edges whose earlier endpoint
  // is p, in emission order (ascending source).
  std::vector<std::vector<RawEntry>> pending(static_cast<std::size_t>(n));
  detail::CscBuilder csc(n);
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  Scratch scratch;

  if (stats != nullptr) {
    stats->merged_degree.assign(static_cast<std::size_t>(n), 0);
    stats->samples_emitted.assign(static_cast<std::size_t>(n), 0);
    stats->fills_received.assign(static_cast<std::size_t>(n), 0);
    stats->total_fills = 0;
    stats->arena_used = 0;
  }

  Index live_fills = 0;
  for (VertexId k = 0; k < n; ++k) {
    scratch.raw.clear();
    for (Index t = pg.fwd_ptr[k]; t < pg.fwd_ptr[k + 1]; ++t) {
      scratch.raw.push_back({pg.fwd_to[static_cast<std::size_t>(t)], -1,
                             pg.fwd_w[static_cast<std::size_t>(t)]});
    }
    auto& incoming = pending[static_cast<std::size_t>(k)];
    if (stats != nullptr) {
      stats->fills_received[static_cast<std::size_t>(k)] =
          static_cast<std::int32_t>(incoming.size());
    }
    live_fills -= static_cast<Index>(incoming.size());
    scratch.raw.insert(scratch.raw.end(), incoming.begin(), incoming.end());
    incoming.clear();
    incoming.shrink_to_fit();

    detail::merge_raw(scratch.raw, scratch.merged);
    const std::size_t m = scratch.merged.size();
    csc.col_ptr[k + 1] = csc.col_ptr[k] + static_cast<Index>(m);
    if (stats != nullptr) {
      stats->merged_degree[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(m);
    }
    if (m == 0) {
      diag[static_cast<std::size_t>(k)] = 0.0;
      continue;
    }

    const double lkk = detail::merged_total(scratch.merged);
    diag[static_cast<std::size_t>(k)] = lkk;
    for (const MergedEntry& e : scratch.merged) {
      csc.rows.push_back(e.row);
      csc.values.push_back(-e.weight / lkk);
    }

    std::int32_t emitted = 0;
    auto place_fill = [&](VertexId a, VertexId b, double w) {
      if (w < detail::kDropThreshold) return;
      const VertexId lo = a < b ? a : b;
      const VertexId hi = a < b ? b : a;
      pending[static_cast<std::size_t>(lo)].push_back({hi, k, w});
      ++emitted;
      ++live_fills;
    };
    if (mode == CliqueMode::sampled) {
      detail::fill_sorted_view(scratch.merged, scratch.by_weight);
      detail::sample_clique_sorted(scratch.by_weight, lkk, sample_seed, k, scratch.suffix,
                                   place_fill);
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
          place_fill(scratch.merged[i].row, scratch.merged[j].row,
                     scratch.merged[i].weight * scratch.merged[j].weight / lkk);
        }
      }
      if (live_fills > options.exact_edge_cap) {
        throw Error(Errc::dense_blowup,
                    "working graph reached " + std::to_string(live_fills) +
                        " fill edges (cap " + std::to_string(options.exact_edge_cap) + ")");
      }
    }
    if (stats != nullptr) {
      stats->samples_emitted[static_cast<std::size_t>(k)] = emitted;
      stats->total_fills += emitted;
    }

    if (options.validate_each_step) {
      validate_working_graph(k + 1, pending, pg);
    }
  }

  LdlFactor f = detail::assemble_factor(n, std::move(csc), std::move(diag), ordering);
  if (stats != nullptr) {
    stats->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  }
  return f;
}

}  // namespace

LdlFactor factor_randomized(const LaplacianGraph& graph, const Ordering& ordering,
                            std::uint64_t seed, FactorStats* stats,
                            const FactorOptions& options) {
  return factor_sequential(graph, ordering, seed, CliqueMode::sampled, stats, options);
}

LdlFactor factor_exact(const LaplacianGraph& graph, const Ordering& ordering,
                       FactorStats* stats, const FactorOptions& options) {
  return factor_sequential(graph, ordering, 0, CliqueMode::exact, stats, options);
}

std::vector<std::int32_t> dependency_counts(const LaplacianGraph& graph,
                                            const Ordering& ordering) {
  return detail::build_pos_graph(graph, ordering).earlier_degree;
}

}  // namespace parac
