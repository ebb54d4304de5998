#pragma once

#include <string>
#include <vector>

#include "parac/factor.hpp"
#include "parac/graph.hpp"

namespace parac {

struct MatrixMarketHeader {
  std::string object;    // "matrix"
  std::string format;    // "coordinate"
  std::string field;     // "real"
  std::string symmetry;  // "symmetric" or "general"
  Index rows = 0;
  Index cols = 0;
  Index nnz = 0;
};

struct MatrixMarketData {
  MatrixMarketHeader header;
  // 0-based, with symmetric storage expanded to both halves.
  std::vector<Triplet> entries;
};

MatrixMarketData read_matrix_market(const std::string& path);

// Convenience: read + validate in one step.
LaplacianGraph read_laplacian(const std::string& path);

// Coordinate real symmetric; lower triangle plus the derived diagonal.
void write_matrix_market(const std::string& path, const LaplacianGraph& graph);

// Factor files: "<stem>.G.mtx" (coordinate real general, strictly lower
// triangular, unit diagonal omitted) and "<stem>.D.mtx" (array real). Values
// round-trip bit exactly.
void write_factor(const LdlFactor& factor, const std::string& stem);

// perm_path may be empty, in which case the factor gets an identity map.
LdlFactor read_factor(const std::string& stem, const std::string& perm_path = "");

// Dense vector as Matrix Market array real.
void write_vector(const std::string& path, std::span<const double> values);
std::vector<double> read_vector(const std::string& path);

}  // namespace parac
