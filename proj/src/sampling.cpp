#include "parac/sampling.hpp"

#include <algorithm>
#include <string>

namespace parac {

namespace {

// Compact index of the neighbor set in ascending-vertex order, shared by the
// dense clique routines.
std::vector<VertexId> sorted_ids(const NeighborList& list) {
  std::vector<VertexId> ids;
  ids.reserve(list.entries.size());
  for (const NeighborEntry& e : list.entries) ids.push_back(e.vertex);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t index_of(const std::vector<VertexId>& ids, VertexId v) {
  return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
}

void add_edge(Eigen::MatrixXd& lap, std::size_t i, std::size_t j, double w) {
  lap(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += w;
  lap(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += w;
  lap(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -= w;
  lap(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) -= w;
}

}  // namespace

double NeighborList::total_weight() const {
  // Ascending-vertex accumulation, matching the order the factorization
  // writes columns in.
  std::vector<const NeighborEntry*> by_id;
  by_id.reserve(entries.size());
  for (const NeighborEntry& e : entries) by_id.push_back(&e);
  std::sort(by_id.begin(), by_id.end(),
            [](const NeighborEntry* a, const NeighborEntry* b) { return a->vertex < b->vertex; });
  double sum = 0.0;
  for (const NeighborEntry* e : by_id) sum += e->weight;
  return sum;
}

NeighborList sort_neighbors(NeighborList list) {
  std::sort(list.entries.begin(), list.entries.end(),
            [](const NeighborEntry& a, const NeighborEntry& b) {
              if (a.weight != b.weight) return a.weight < b.weight;
              return a.vertex < b.vertex;
            });
  list.sorted_by_weight = true;
  return list;
}

std::vector<SampledEdge> sample_clique(const NeighborList& list, const SampleStream& stream) {
  std::vector<SampledEdge> edges;
  if (list.entries.size() < 2) return edges;
  NeighborList sorted = list.sorted_by_weight ? list : sort_neighbors(list);
  const double lkk = sorted.total_weight();
  edges.reserve(sorted.entries.size() - 1);
  std::vector<double> suffix;
  detail::sample_clique_sorted(sorted.entries, lkk, stream.seed, sorted.owner, suffix,
                               [&](VertexId a, VertexId b, double w) {
                                 edges.push_back({a, b, w});
                               });
  return edges;
}

Eigen::MatrixXd exact_clique(const NeighborList& list) {
  const std::vector<VertexId> ids = sorted_ids(list);
  const std::size_t m = ids.size();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
  if (m < 2) return lap;
  const double lkk = list.total_weight();
  for (const NeighborEntry& a : list.entries) {
    for (const NeighborEntry& b : list.entries) {
      if (a.vertex >= b.vertex) continue;
      add_edge(lap, index_of(ids, a.vertex), index_of(ids, b.vertex),
               a.weight * b.weight / lkk);
    }
  }
  return lap;
}

Eigen::MatrixXd enumerate_expectation(const NeighborList& list) {
  if (list.entries.size() > 8) {
    throw Error(Errc::too_many_neighbors,
                std::to_string(list.entries.size()) + " neighbors (enumeration cap is 8)");
  }
  const std::vector<VertexId> ids = sorted_ids(list);
  const std::size_t m = ids.size();
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                               static_cast<Eigen::Index>(m));
  if (m < 2) return mean;

  const NeighborList sorted = sort_neighbors(list);
  const double lkk = sorted.total_weight();
  std::vector<double> suffix(m);
  suffix[m - 1] = sorted.entries[m - 1].weight;
  for (std::size_t g = m - 1; g-- > 0;) {
    suffix[g] = sorted.entries[g].weight + suffix[g + 1];
  }

  // Walk the full outcome tree of the draw sequence: at step i every
  // candidate j carries probability weight(j) / suffix(i+1). Later draws do
  // not depend on earlier choices, but accumulating outcome by outcome keeps
  // this a genuine enumeration rather than a closed-form shortcut.
  auto enumerate = [&](auto&& self, std::size_t i, double prob,
                       Eigen::MatrixXd& acc) -> void {
    if (i + 1 >= m) {
      mean += prob * acc;
      return;
    }
    const double s = suffix[i + 1];
    for (std::size_t j = i + 1; j < m; ++j) {
      const double pj = sorted.entries[j].weight / s;
      const double w = s * sorted.entries[i].weight / lkk;
      const std::size_t ia = index_of(ids, sorted.entries[i].vertex);
      const std::size_t ib = index_of(ids, sorted.entries[j].vertex);
      add_edge(acc, ia, ib, w);
      self(self, i + 1, prob * pj, acc);
      add_edge(acc, ia, ib, -w);
    }
  };
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(mean.rows(), mean.cols());
  enumerate(enumerate, 0, 1.0, acc);
  return mean;
}

}  // namespace parac
