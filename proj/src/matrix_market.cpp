#include "parac/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "parac/error.hpp"

namespace parac {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void parse_fail(const std::string& path, long line, const std::string& what) {
  throw Error(Errc::parse_error, path + ":" + std::to_string(line) + ": " + what);
}

struct LineReader {
  std::ifstream in;
  std::string path;
  long line_no = 0;

  explicit LineReader(const std::string& p) : in(p), path(p) {
    if (!in) throw Error(Errc::io_error, "cannot open " + p);
  }

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      return true;
    }
    return false;
  }
};

// Exact round trip for doubles; %.17g is sufficient for IEEE binary64.
void print_value(std::FILE* f, double v) { std::fprintf(f, "%.17g", v); }

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_out(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw Error(Errc::io_error, "cannot write " + path);
  return f;
}

}  // namespace

MatrixMarketData read_matrix_market(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) parse_fail(path, reader.line_no, "empty file");

  MatrixMarketData data;
  {
    std::istringstream head(line);
    std::string banner;
    head >> banner >> data.header.object >> data.header.format >> data.header.field >>
        data.header.symmetry;
    if (banner != "%%MatrixMarket") parse_fail(path, reader.line_no, "missing banner");
    data.header.object = lower(data.header.object);
    data.header.format = lower(data.header.format);
    data.header.field = lower(data.header.field);
    data.header.symmetry = lower(data.header.symmetry);
  }
  if (data.header.object != "matrix" || data.header.format != "coordinate" ||
      data.header.field != "real" ||
      (data.header.symmetry != "symmetric" && data.header.symmetry != "general")) {
    throw Error(Errc::unsupported_field,
                path + ": matrix coordinate real {symmetric|general} required, got \"" +
                    data.header.object + " " + data.header.format + " " + data.header.field +
                    " " + data.header.symmetry + "\"");
  }

  // Size line, after comments.
  bool have_size = false;
  while (reader.next(line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sizes(line);
    if (!(sizes >> data.header.rows >> data.header.cols >> data.header.nnz)) {
      parse_fail(path, reader.line_no, "malformed size line");
    }
    have_size = true;
    break;
  }
  if (!have_size) parse_fail(path, reader.line_no, "missing size line");

  const bool symmetric = data.header.symmetry == "symmetric";
  data.entries.reserve(static_cast<std::size_t>(data.header.nnz) * (symmetric ? 2 : 1));
  Index seen = 0;
  while (seen < data.header.nnz) {
    if (!reader.next(line)) parse_fail(path, reader.line_no, "unexpected end of file");
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    long long i = 0, j = 0;
    double v = 0.0;
    std::istringstream entry(line);
    if (!(entry >> i >> j >> v)) parse_fail(path, reader.line_no, "malformed entry");
    if (i < 1 || j < 1 || i > data.header.rows || j > data.header.cols) {
      parse_fail(path, reader.line_no, "index out of bounds");
    }
    ++seen;
    const Triplet t{static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), v};
    data.entries.push_back(t);
    if (symmetric && t.row != t.col) {
      data.entries.push_back({t.col, t.row, t.value});
    }
  }
  return data;
}

LaplacianGraph read_laplacian(const std::string& path) {
  MatrixMarketData data = read_matrix_market(path);
  if (data.header.rows != data.header.cols) {
    throw Error(Errc::parse_error, path + ": matrix is not square");
  }
  return validate_laplacian(static_cast<VertexId>(data.header.rows), data.entries);
}

void write_matrix_market(const std::string& path, const LaplacianGraph& graph) {
  FilePtr f = open_out(path);
  const VertexId n = graph.num_vertices();
  const Index nnz = graph.nnz_lower() + n;
  std::fprintf(f.get(), "%%%%MatrixMarket matrix coordinate real symmetric\n");
  std::fprintf(f.get(), "%" PRId64 " %" PRId64 " %" PRId64 "\n", static_cast<Index>(n),
               static_cast<Index>(n), nnz);
  // Lower triangle, row major: diagonal first, then the -w entries.
  for (VertexId v = 0; v < n; ++v) {
    std::fprintf(f.get(), "%d %d ", v + 1, v + 1);
    print_value(f.get(), graph.weighted_degree(v));
    std::fputc('\n', f.get());
    const auto nbrs = graph.neighbors(v);
    const auto w = graph.weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] < v) {
        std::fprintf(f.get(), "%d %d ", v + 1, nbrs[i] + 1);
        print_value(f.get(), -w[i]);
        std::fputc('\n', f.get());
      }
    }
  }
}

void write_factor(const LdlFactor& factor, const std::string& stem) {
  {
    FilePtr f = open_out(stem + ".G.mtx");
    std::fprintf(f.get(), "%%%%MatrixMarket matrix coordinate real general\n");
    std::fprintf(f.get(), "%d %d %" PRId64 "\n", factor.n, factor.n,
                 factor.nnz_off_diagonal());
    for (VertexId k = 0; k < factor.n; ++k) {
      for (Index p = factor.col_ptr[k]; p < factor.col_ptr[k + 1]; ++p) {
        std::fprintf(f.get(), "%d %d ", factor.rows[static_cast<std::size_t>(p)] + 1, k + 1);
        print_value(f.get(), factor.values[static_cast<std::size_t>(p)]);
        std::fputc('\n', f.get());
      }
    }
  }
  {
    FilePtr f = open_out(stem + ".D.mtx");
    std::fprintf(f.get(), "%%%%MatrixMarket matrix array real general\n");
    std::fprintf(f.get(), "%d 1\n", factor.n);
    for (VertexId k = 0; k < factor.n; ++k) {
      print_value(f.get(), factor.diag[static_cast<std::size_t>(k)]);
      std::fputc('\n', f.get());
    }
  }
}

LdlFactor read_factor(const std::string& stem, const std::string& perm_path) {
  LdlFactor factor;
  {
    LineReader reader(stem + ".G.mtx");
    std::string line;
    if (!reader.next(line)) parse_fail(reader.path, reader.line_no, "empty file");
    if (line.rfind("%%MatrixMarket matrix coordinate real general", 0) != 0) {
      throw Error(Errc::unsupported_field, reader.path + ": expected coordinate real general");
    }
    long long rows = 0, cols = 0, nnz = 0;
    while (reader.next(line)) {
      if (!line.empty() && line[0] == '%') continue;
      std::istringstream sizes(line);
      if (!(sizes >> rows >> cols >> nnz)) parse_fail(reader.path, reader.line_no, "size line");
      break;
    }
    if (rows != cols) parse_fail(reader.path, reader.line_no, "factor must be square");
    factor.n = static_cast<VertexId>(rows);
    std::vector<std::vector<std::pair<VertexId, double>>> cols_acc(
        static_cast<std::size_t>(rows));
    for (long long e = 0; e < nnz;) {
      if (!reader.next(line)) parse_fail(reader.path, reader.line_no, "unexpected end of file");
      if (!line.empty() && line[0] == '%') continue;
      long long i = 0, j = 0;
      double v = 0.0;
      std::istringstream entry(line);
      if (!(entry >> i >> j >> v)) parse_fail(reader.path, reader.line_no, "malformed entry");
      if (i <= j || i > rows || j < 1) {
        parse_fail(reader.path, reader.line_no, "entry not strictly lower triangular");
      }
      cols_acc[static_cast<std::size_t>(j - 1)].emplace_back(static_cast<VertexId>(i - 1), v);
      ++e;
    }
    factor.col_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (long long k = 0; k < rows; ++k) {
      auto& col = cols_acc[static_cast<std::size_t>(k)];
      std::sort(col.begin(), col.end());
      factor.col_ptr[static_cast<std::size_t>(k) + 1] =
          factor.col_ptr[static_cast<std::size_t>(k)] + static_cast<Index>(col.size());
      for (const auto& [r, v] : col) {
        factor.rows.push_back(r);
        factor.values.push_back(v);
      }
    }
  }
  {
    LineReader reader(stem + ".D.mtx");
    std::string line;
    if (!reader.next(line)) parse_fail(reader.path, reader.line_no, "empty file");
    if (line.rfind("%%MatrixMarket matrix array real", 0) != 0) {
      throw Error(Errc::unsupported_field, reader.path + ": expected array real");
    }
    long long rows = 0, cols = 0;
    while (reader.next(line)) {
      if (!line.empty() && line[0] == '%') continue;
      std::istringstream sizes(line);
      if (!(sizes >> rows >> cols)) parse_fail(reader.path, reader.line_no, "size line");
      break;
    }
    if (rows != factor.n || cols != 1) {
      parse_fail(reader.path, reader.line_no, "diagonal length mismatch");
    }
    factor.diag.reserve(static_cast<std::size_t>(rows));
    double v = 0.0;
    while (factor.diag.size() < static_cast<std::size_t>(rows)) {
      if (!reader.next(line)) parse_fail(reader.path, reader.line_no, "unexpected end of file");
      if (!line.empty() && line[0] == '%') continue;
      std::istringstream entry(line);
      if (!(entry >> v)) parse_fail(reader.path, reader.line_no, "malformed value");
      factor.diag.push_back(v);
    }
  }
  if (!perm_path.empty()) {
    factor.perm = Ordering::from_positions(
                      ordering_from_file(perm_path, factor.n).perm)
                      .perm;
  } else {
    factor.perm = Ordering::identity(factor.n).perm;
  }
  return factor;
}

void write_vector(const std::string& path, std::span<const double> values) {
  FilePtr f = open_out(path);
  std::fprintf(f.get(), "%%%%MatrixMarket matrix array real general\n");
  std::fprintf(f.get(), "%zu 1\n", values.size());
  for (double v : values) {
    print_value(f.get(), v);
    std::fputc('\n', f.get());
  }
}

std::vector<double> read_vector(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) parse_fail(path, reader.line_no, "empty file");
  if (line.rfind("%%MatrixMarket matrix array real", 0) != 0) {
    throw Error(Errc::unsupported_field, path + ": expected array real");
  }
  long long rows = 0, cols = 0;
  while (reader.next(line)) {
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream sizes(line);
    if (!(sizes >> rows >> cols)) parse_fail(path, reader.line_no, "size line");
    break;
  }
  if (cols != 1) parse_fail(path, reader.line_no, "expected a single column");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(rows));
  while (values.size() < static_cast<std::size_t>(rows)) {
    if (!reader.next(line)) parse_fail(path, reader.line_no, "unexpected end of file");
    if (!line.empty() && line[0] == '%') continue;
    double v = 0.0;
    std::istringstream entry(line);
    if (!(entry >> v)) parse_fail(path, reader.line_no, "malformed value");
    values.push_back(v);
  }
  return values;
}

}  // namespace parac
