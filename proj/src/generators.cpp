#include "parac/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "parac/error.hpp"
#include "parac/rng.hpp"

namespace parac {

LaplacianGraph gen_poisson3d(const PoissonSpec& spec) {
  if (spec.n < 2) throw Error(Errc::budget_exceeded, "grid needs n >= 2");
  if (spec.epsilon <= 0.0 || spec.contrast_ratio <= 0.0) {
    throw Error(Errc::parse_error, "epsilon and contrast ratio must be positive");
  }
  const Index n = spec.n;
  const Index total = n * n * n;
  if (total > spec.budget_vertices) {
    throw Error(Errc::budget_exceeded,
                std::to_string(total) + " grid points exceed budget " +
                    std::to_string(spec.budget_vertices));
  }
  auto vid = [n](Index x, Index y, Index z) -> VertexId {
    return static_cast<VertexId>(x + n * (y + n * z));
  };

  // Per-cell coefficients for the contrast variant, log-uniform in
  // [1, contrast_ratio], keyed by grid point so the field is seed-stable.
  const std::uint64_t cell_seed = derive_seed(spec.seed, kSaltCells);
  auto cell_coeff = [&](VertexId v) {
    const double u = SampleStream::unit_uniform(cell_seed, v, 0);
    return std::exp(u * std::log(spec.contrast_ratio));
  };
  auto edge_weight = [&](VertexId a, VertexId b, bool z_dir) {
    switch (spec.variant) {
      case PoissonVariant::uniform:
        return 1.0;
      case PoissonVariant::anisotropic:
        return z_dir ? spec.epsilon : 1.0;
      case PoissonVariant::contrast: {
        const double ca = cell_coeff(a);
        const double cb = cell_coeff(b);
        return 2.0 / (1.0 / ca + 1.0 / cb);
      }
    }
    return 1.0;
  };

  std::vector<Triplet> edges;
  edges.reserve(static_cast<std::size_t>(3 * total));
  for (Index z = 0; z < n; ++z) {
    for (Index y = 0; y < n; ++y) {
      for (Index x = 0; x < n; ++x) {
        const VertexId v = vid(x, y, z);
        if (x + 1 < n) edges.push_back({v, vid(x + 1, y, z), edge_weight(v, vid(x + 1, y, z), false)});
        if (y + 1 < n) edges.push_back({v, vid(x, y + 1, z), edge_weight(v, vid(x, y + 1, z), false)});
        if (z + 1 < n) edges.push_back({v, vid(x, y, z + 1), edge_weight(v, vid(x, y, z + 1), true)});
      }
    }
  }
  return LaplacianGraph::from_edges(static_cast<VertexId>(total), edges);
}

PoissonSpec parse_poisson_spec(const std::string& text) {
  // poisson3d:n=32,variant=uniform,epsilon=1e-3,contrast=1e4,seed=0
  const std::string prefix = "poisson3d:";
  if (text.rfind(prefix, 0) != 0) {
    throw Error(Errc::parse_error, "generator spec must start with \"poisson3d:\"");
  }
  PoissonSpec spec;
  std::stringstream rest(text.substr(prefix.size()));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::parse_error, "bad generator option \"" + item + "\"");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = static_cast<VertexId>(std::stoll(value));
      } else if (key == "variant") {
        if (value == "uniform") spec.variant = PoissonVariant::uniform;
        else if (value == "anisotropic") spec.variant = PoissonVariant::anisotropic;
        else if (value == "contrast") spec.variant = PoissonVariant::contrast;
        else throw Error(Errc::parse_error, "unknown variant \"" + value + "\"");
      } else if (key == "epsilon") {
        spec.epsilon = std::stod(value);
      } else if (key == "contrast") {
        spec.contrast_ratio = std::stod(value);
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(std::stoull(value));
      } else {
        throw Error(Errc::parse_error, "unknown generator option \"" + key + "\"");
      }
    } catch (const std::invalid_argument&) {
      throw Error(Errc::parse_error, "bad value for \"" + key + "\"");
    }
  }
  if (spec.epsilon <= 0.0 || spec.contrast_ratio <= 0.0) {
    throw Error(Errc::parse_error, "epsilon and contrast must be positive");
  }
  return spec;
}

LaplacianGraph gen_random_connected(VertexId n, Index extra_edges, std::uint64_t seed,
                                    bool unit_weights) {
  SplitMix64 rng(derive_seed(seed, 0x67656e72616e64ULL));
  std::set<std::pair<VertexId, VertexId>> used;
  std::vector<Triplet> edges;
  auto weight = [&]() { return unit_weights ? 1.0 : 0.5 + 1.5 * rng.next_double(); };
  for (VertexId v = 1; v < n; ++v) {
    const VertexId u = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(v)));
    used.emplace(u, v);
    edges.push_back({u, v, weight()});
  }
  const Index max_extra =
      static_cast<Index>(n) * (n - 1) / 2 - static_cast<Index>(edges.size());
  extra_edges = std::min(extra_edges, max_extra);
  while (extra_edges > 0) {
    VertexId a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    VertexId b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.emplace(a, b).second) continue;
    edges.push_back({a, b, weight()});
    --extra_edges;
  }
  return LaplacianGraph::from_edges(n, edges);
}

LaplacianGraph gen_random_components(VertexId n, VertexId components, Index extra_edges,
                                     std::uint64_t seed) {
  components = std::max<VertexId>(1, std::min(components, n));
  SplitMix64 rng(derive_seed(seed, 0x636f6d706f6e74ULL));
  std::vector<Triplet> edges;
  // Split [0, n) into contiguous blocks, then wire each block like
  // gen_random_connected.
  std::vector<VertexId> starts{0};
  for (VertexId c = 1; c < components; ++c) {
    starts.push_back(static_cast<VertexId>(1 + rng.below(static_cast<std::uint64_t>(n - 1))));
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  starts.push_back(n);

  std::set<std::pair<VertexId, VertexId>> used;
  for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
    const VertexId lo = starts[c];
    const VertexId hi = starts[c + 1];
    for (VertexId v = lo + 1; v < hi; ++v) {
      const VertexId u =
          lo + static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(v - lo)));
      used.emplace(u, v);
      edges.push_back({u, v, 0.5 + 1.5 * rng.next_double()});
    }
    Index extras = extra_edges / static_cast<Index>(starts.size() - 1);
    const VertexId span = hi - lo;
    Index attempts = 8 * extras + 16;
    while (extras > 0 && span > 2 && attempts-- > 0) {
      VertexId a = lo + static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(span)));
      VertexId b = lo + static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(span)));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (!used.emplace(a, b).second) continue;
      edges.push_back({a, b, 0.5 + 1.5 * rng.next_double()});
      --extras;
    }
  }
  return LaplacianGraph::from_edges(n, edges);
}

}  // namespace parac
