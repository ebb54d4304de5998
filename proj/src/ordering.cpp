#include "parac/ordering.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include "parac/error.hpp"
#include "parac/rng.hpp"

namespace parac {

Ordering Ordering::identity(VertexId n) {
  Ordering o;
  o.perm.resize(static_cast<std::size_t>(n));
  std::iota(o.perm.begin(), o.perm.end(), 0);
  o.inverse = o.perm;
  return o;
}

Ordering Ordering::from_positions(std::vector<VertexId> positions) {
  const VertexId n = static_cast<VertexId>(positions.size());
  std::vector<VertexId> inverse(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = positions[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n || inverse[static_cast<std::size_t>(p)] != -1) {
      throw Error(Errc::not_a_permutation,
                  "position " + std::to_string(p) + " for vertex " + std::to_string(v));
    }
    inverse[static_cast<std::size_t>(p)] = v;
  }
  Ordering o;
  o.perm = std::move(positions);
  o.inverse = std::move(inverse);
  return o;
}

Ordering ordering_random(VertexId n, std::uint64_t seed) {
  std::vector<VertexId> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  SplitMix64 rng(derive_seed(seed, kSaltOrdering));
  shuffle(labels, rng);
  // labels[p] = vertex eliminated at position p
  std::vector<VertexId> positions(static_cast<std::size_t>(n));
  for (VertexId p = 0; p < n; ++p) positions[static_cast<std::size_t>(labels[p])] = p;
  return Ordering::from_positions(std::move(positions));
}

Ordering ordering_nnz_sort(const LaplacianGraph& graph, std::uint64_t seed) {
  const VertexId n = graph.num_vertices();
  struct Key {
    Index degree;
    double tie;
    VertexId vertex;
  };
  std::vector<Key> keys(static_cast<std::size_t>(n));
  const std::uint64_t tie_seed = derive_seed(seed, kSaltTieBreak);
  for (VertexId v = 0; v < n; ++v) {
    keys[static_cast<std::size_t>(v)] = {graph.degree(v),
                                         SampleStream::unit_uniform(tie_seed, v, 0), v};
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.tie != b.tie) return a.tie < b.tie;
    return a.vertex < b.vertex;
  });
  std::vector<VertexId> positions(static_cast<std::size_t>(n));
  for (VertexId p = 0; p < n; ++p) positions[static_cast<std::size_t>(keys[p].vertex)] = p;
  return Ordering::from_positions(std::move(positions));
}

Ordering ordering_from_file(const std::string& path, VertexId n) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open permutation file " + path);
  std::vector<VertexId> positions;
  positions.reserve(static_cast<std::size_t>(n));
  long long value = 0;
  while (in >> value) positions.push_back(static_cast<VertexId>(value));
  if (static_cast<VertexId>(positions.size()) != n) {
    throw Error(Errc::not_a_permutation,
                "expected " + std::to_string(n) + " entries, found " +
                    std::to_string(positions.size()));
  }
  return Ordering::from_positions(std::move(positions));
}

void write_permutation(const std::string& path, const Ordering& ordering) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write permutation file " + path);
  for (std::size_t v = 0; v < ordering.perm.size(); ++v) {
    out << ordering.perm[v] << '\n';
  }
}

}  // namespace parac
