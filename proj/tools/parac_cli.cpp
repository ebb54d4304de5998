// Command-line front end: factorization, solving, structure analysis, and a
// small benchmark harness around the library.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parac/error.hpp"
#include "parac/etree.hpp"
#include "parac/factor_par.hpp"
#include "parac/factor_seq.hpp"
#include "parac/generators.hpp"
#include "parac/graph.hpp"
#include "parac/matrix_market.hpp"
#include "parac/ordering.hpp"
#include "parac/rng.hpp"
#include "parac/sampling.hpp"
#include "parac/solver.hpp"

using json = nlohmann::json;
using namespace parac;

namespace {

constexpr const char* kBenchSchema = "parac-bench-v1";
constexpr const char* kAnalyzeSchema = "parac-analyze-v1";

int exit_code_for(Errc code) { return 10 + static_cast<int>(code); }

std::uint64_t seed_from_env() {
  if (const char* env = std::getenv("PARAC_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw Error(Errc::parse_error, std::string("PARAC_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

struct CommonOptions {
  std::string input;
  std::string gen;
  std::string ordering = "natural";
  std::string backend = "seq";
  int workers = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::int64_t arena_budget = -1;
  std::int64_t workspace_capacity = -1;
  bool identity_hash = false;

  void add_input_flags(CLI::App* cmd) {
    cmd->add_option("--input", input, "Matrix Market file holding the Laplacian");
    cmd->add_option("--gen", gen, "generator spec, e.g. poisson3d:n=32,variant=uniform");
  }

  void add_seed_flag(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed (overrides PARAC_SEED)")
        ->each([this](const std::string&) { seed_given = true; });
  }

  void resolve_seed() {
    if (!seed_given) seed = seed_from_env();
  }

  LaplacianGraph load_graph() const {
    if (!input.empty() && !gen.empty()) {
      throw Error(Errc::parse_error, "--input and --gen are mutually exclusive");
    }
    if (!input.empty()) return read_laplacian(input);
    if (!gen.empty()) return gen_poisson3d(parse_poisson_spec(gen));
    throw Error(Errc::parse_error, "one of --input or --gen is required");
  }

  std::string input_name() const { return input.empty() ? gen : input; }
};

Ordering make_ordering(const LaplacianGraph& graph, const std::string& text,
                       std::uint64_t seed) {
  const VertexId n = graph.num_vertices();
  if (text == "natural") return Ordering::identity(n);
  if (text == "random") return ordering_random(n, seed);
  if (text == "nnz-sort") return ordering_nnz_sort(graph, seed);
  if (text.rfind("file:", 0) == 0) return ordering_from_file(text.substr(5), n);
  throw Error(Errc::parse_error, "unknown ordering \"" + text +
                                     "\" (natural|random|nnz-sort|file:<path>)");
}

struct FactorOutcome {
  LdlFactor factor;
  FactorStats stats;
};

FactorOutcome run_factor(const LaplacianGraph& graph, const Ordering& ordering,
                         const CommonOptions& opts, bool record_times = false) {
  FactorOutcome out;
  if (opts.backend == "seq") {
    out.factor = factor_randomized(graph, ordering, opts.seed, &out.stats);
  } else if (opts.backend == "exact") {
    out.factor = factor_exact(graph, ordering, &out.stats);
  } else if (opts.backend == "par-left" || opts.backend == "par-right") {
    ParOptions par;
    par.workers = opts.workers;
    par.arena_budget = opts.arena_budget;
    par.workspace_capacity = opts.workspace_capacity;
    par.identity_hash = opts.identity_hash;
    par.record_vertex_times = record_times;
    out.factor = opts.backend == "par-left"
                     ? factor_parallel_left(graph, ordering, opts.seed, par, &out.stats)
                     : factor_parallel_right(graph, ordering, opts.seed, par, &out.stats);
  } else {
    throw Error(Errc::parse_error, "unknown backend \"" + opts.backend +
                                       "\" (seq|par-left|par-right|exact)");
  }
  return out;
}

json provenance(const CommonOptions& opts) {
  return json{{"input", opts.input_name()}, {"ordering", opts.ordering},
              {"backend", opts.backend},    {"workers", opts.workers},
              {"seed", opts.seed},          {"identity_hash", opts.identity_hash}};
}

void emit_json(const json& payload, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out << payload.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io_error, "cannot write " + path);
    out << text;
  }
}

void write_trace(const std::string& path, const LdlFactor& factor, const FactorStats& stats,
                 const Ordering& ordering) {
  const auto rounds = schedule_levels(factor);
  json vertices = json::array();
  for (VertexId k = 0; k < factor.n; ++k) {
    json v{{"position", k},
           {"label", ordering.inverse[static_cast<std::size_t>(k)]},
           {"round", rounds[static_cast<std::size_t>(k)]},
           {"fills", stats.fills_received.empty()
                         ? 0
                         : stats.fills_received[static_cast<std::size_t>(k)]},
           {"samples", stats.samples_emitted.empty()
                           ? 0
                           : stats.samples_emitted[static_cast<std::size_t>(k)]}};
    if (!stats.vertex_seconds.empty()) {
      v["seconds"] = stats.vertex_seconds[static_cast<std::size_t>(k)];
    }
    vertices.push_back(std::move(v));
  }
  emit_json(json{{"n", factor.n},
                 {"rounds", schedule_depth(factor)},
                 {"total_fills", stats.total_fills},
                 {"vertices", std::move(vertices)}},
            path);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::stringstream stream(text);
  while (std::getline(stream, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

// ---------------------------------------------------------------------------

int cmd_gen(CommonOptions& opts, const std::string& output) {
  opts.resolve_seed();
  if (opts.gen.empty()) throw Error(Errc::parse_error, "gen requires --gen");
  PoissonSpec spec = parse_poisson_spec(opts.gen);
  LaplacianGraph graph = gen_poisson3d(spec);
  write_matrix_market(output, graph);
  std::cout << "wrote " << output << ": " << graph.num_vertices() << " vertices, "
            << graph.num_edges() << " edges\n";
  return 0;
}

int cmd_factor(CommonOptions& opts, const std::string& output, const std::string& stats_path,
               const std::string& trace_path, bool record_times) {
  opts.resolve_seed();
  const LaplacianGraph graph = opts.load_graph();
  const Ordering ordering = make_ordering(graph, opts.ordering, opts.seed);
  FactorOutcome out = run_factor(graph, ordering, opts, record_times);

  if (!output.empty()) {
    write_factor(out.factor, output);
    write_permutation(output + ".perm.txt", ordering);
  }
  if (!trace_path.empty()) write_trace(trace_path, out.factor, out.stats, ordering);

  json stats{{"config", provenance(opts)},
             {"n", out.factor.n},
             {"nnz_g", out.factor.nnz()},
             {"nnz_g_off_diagonal", out.factor.nnz_off_diagonal()},
             {"fill_ratio", fill_ratio(graph, out.factor)},
             {"schedule_depth", schedule_depth(out.factor)},
             {"total_fills", out.stats.total_fills},
             {"factor_seconds", out.stats.seconds},
             {"checksum", out.factor.checksum()}};
  if (out.stats.arena_used > 0) stats["arena_used"] = out.stats.arena_used;
  emit_json(stats, stats_path);
  return 0;
}

int cmd_solve(CommonOptions& opts, const std::string& factor_stem, const std::string& perm,
              const std::string& rhs_path, const std::string& rhs_mode, double tol,
              int max_iters, const std::string& report_path,
              const std::string& solution_path) {
  opts.resolve_seed();
  const LaplacianGraph graph = opts.load_graph();

  LdlFactor factor;
  double factor_seconds = 0.0;
  if (!factor_stem.empty()) {
    std::string perm_path = perm;
    if (perm_path.empty()) {
      const std::string candidate = factor_stem + ".perm.txt";
      if (std::filesystem::exists(candidate)) perm_path = candidate;
    }
    factor = read_factor(factor_stem, perm_path);
  } else {
    const Ordering ordering = make_ordering(graph, opts.ordering, opts.seed);
    FactorOutcome out = run_factor(graph, ordering, opts);
    factor = std::move(out.factor);
    factor_seconds = out.stats.seconds;
  }

  std::vector<double> b;
  if (!rhs_path.empty()) {
    b = read_vector(rhs_path);
  } else if (rhs_mode == "random-projected") {
    b = make_rhs(graph, RhsMode::random_projected, opts.seed);
  } else if (rhs_mode == "from-random-x") {
    b = make_rhs(graph, RhsMode::from_random_x, opts.seed);
  } else {
    throw Error(Errc::parse_error,
                "unknown rhs mode \"" + rhs_mode + "\" (random-projected|from-random-x)");
  }

  SolveConfig config;
  config.tol = tol;
  config.max_iters = max_iters;
  auto [x, report] = pcg_solve(graph, factor, b, config);
  report.factor_seconds = factor_seconds;

  if (!solution_path.empty()) write_vector(solution_path, x);
  emit_json(json{{"config", provenance(opts)},
                 {"tol", tol},
                 {"max_iters", max_iters},
                 {"iterations", report.iterations},
                 {"relative_residual", report.relative_residual},
                 {"recurrence_residual", report.recurrence_residual},
                 {"converged", report.converged},
                 {"factor_seconds", report.factor_seconds},
                 {"solve_seconds", report.solve_seconds}},
            report_path);
  return report.converged ? 0 : 3;
}

int cmd_analyze(CommonOptions& opts, const std::string& csv_path) {
  opts.resolve_seed();
  const LaplacianGraph graph = opts.load_graph();
  const Ordering ordering = make_ordering(graph, opts.ordering, opts.seed);
  FactorOutcome out = run_factor(graph, ordering, opts);
  const EtreeReport report = analyze_structure(graph, ordering, out.factor);

  std::ostringstream csv;
  csv << "schema,input,ordering,backend,seed,classical_height,sampled_height,"
         "first_row_height,critical_path,fill_ratio,schedule_depth\n";
  csv << kAnalyzeSchema << ',' << csv_field(opts.input_name()) << ',' << opts.ordering
      << ',' << opts.backend << ',' << opts.seed << ',' << report.classical_height << ','
      << report.sampled_height << ',' << report.first_row_height << ','
      << report.critical_path << ',' << report.fill_ratio << ','
      << report.schedule_depth << '\n';
  emit_text(csv.str(), csv_path);
  return 0;
}

int cmd_bench(const std::string& inputs, const std::string& gens, const std::string& orderings,
              const std::string& backends, const std::string& workers_list,
              const std::string& seeds_list, int repeats, double tol, int max_iters,
              bool solve_too, const std::string& csv_path) {
  struct Cell {
    std::string input, ordering, backend;
    int workers = 1;
    std::uint64_t seed = 0;
    double factor_seconds = 0.0, solve_seconds = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    Index nnz_g = 0;
    double fill = 0.0;
    int depth = 0;
    std::uint64_t checksum = 0;
    std::string error;
  };
  std::vector<Cell> cells;

  std::vector<std::pair<std::string, LaplacianGraph>> graphs;
  for (const std::string& path : split_list(inputs)) {
    graphs.emplace_back(path, read_laplacian(path));
  }
  for (const std::string& spec : split_list(gens, ';')) {
    graphs.emplace_back(spec, gen_poisson3d(parse_poisson_spec(spec)));
  }
  if (graphs.empty()) throw Error(Errc::parse_error, "bench needs --inputs or --gens");

  std::vector<int> workers;
  for (const std::string& w : split_list(workers_list)) workers.push_back(std::stoi(w));
  std::vector<std::uint64_t> seeds;
  for (const std::string& s : split_list(seeds_list)) seeds.push_back(std::stoull(s));

  for (const auto& [name, graph] : graphs) {
    for (const std::string& ordering_kind : split_list(orderings)) {
      for (const std::string& backend : split_list(backends)) {
        const bool serial_backend = backend == "seq" || backend == "exact";
        bool serial_done = false;
        for (int w : workers) {
          if (serial_backend && serial_done) continue;  // workers are irrelevant
          serial_done = true;
          for (std::uint64_t seed : seeds) {
            Cell cell;
            cell.input = name;
            cell.ordering = ordering_kind;
            cell.backend = backend;
            cell.workers = serial_backend ? 1 : w;
            cell.seed = seed;
            try {
              CommonOptions opts;
              opts.backend = backend;
              opts.workers = cell.workers;
              opts.seed = seed;
              opts.ordering = ordering_kind;
              const Ordering ordering = make_ordering(graph, ordering_kind, seed);
              std::vector<double> factor_times;
              for (int rep = 0; rep < std::max(repeats, 1); ++rep) {
                FactorOutcome out = run_factor(graph, ordering, opts);
                factor_times.push_back(out.stats.seconds);
                if (rep == 0) {
                  cell.nnz_g = out.factor.nnz();
                  cell.fill = fill_ratio(graph, out.factor);
                  cell.depth = schedule_depth(out.factor);
                  cell.checksum = out.factor.checksum();
                  if (solve_too) {
                    std::vector<double> b =
                        make_rhs(graph, RhsMode::random_projected, seed);
                    SolveConfig config;
                    config.tol = tol;
                    config.max_iters = max_iters;
                    auto [x, report] = pcg_solve(graph, out.factor, b, config);
                    cell.iterations = report.iterations;
                    cell.residual = report.relative_residual;
                    cell.converged = report.converged;
                    cell.solve_seconds = report.solve_seconds;
                  }
                }
              }
              cell.factor_seconds = median(factor_times);
            } catch (const Error& e) {
              cell.error = errc_name(e.code());
            } catch (const std::exception& e) {
              cell.error = e.what();
            }
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }

  // Speedup against the single-worker cell of the same configuration.
  std::map<std::string, double> base_time;
  for (const Cell& c : cells) {
    if (c.workers == 1 && c.error.empty()) {
      base_time[c.input + '|' + c.ordering + '|' + c.backend + '|' +
                std::to_string(c.seed)] = c.factor_seconds;
    }
  }

  std::ostringstream csv;
  csv << "schema,input,ordering,backend,workers,seed,factor_seconds,solve_seconds,"
         "iterations,relative_residual,converged,nnz_g,fill_ratio,schedule_depth,"
         "checksum,speedup_vs_w1,error\n";
  for (const Cell& c : cells) {
    const auto base = base_time.find(c.input + '|' + c.ordering + '|' + c.backend + '|' +
                                     std::to_string(c.seed));
    csv << kBenchSchema << ',' << csv_field(c.input) << ',' << c.ordering << ',' << c.backend << ','
        << c.workers << ',' << c.seed << ',' << c.factor_seconds << ',' << c.solve_seconds
        << ',' << c.iterations << ',' << c.residual << ',' << (c.converged ? 1 : 0) << ','
        << c.nnz_g << ',' << c.fill << ',' << c.depth << ',' << c.checksum << ',';
    if (base != base_time.end() && c.factor_seconds > 0.0 && c.error.empty()) {
      csv << base->second / c.factor_seconds;
    }
    csv << ',' << c.error << '\n';
  }
  emit_text(csv.str(), csv_path);
  return 0;
}

int cmd_check_expectation(CommonOptions& opts, const std::string& mode, int lists,
                          int max_neighbors, int mc_vertices, long long trials) {
  opts.resolve_seed();
  bool ok = true;

  if (mode == "enumeration" || mode == "both") {
    SplitMix64 rng(derive_seed(opts.seed, 0x656e756d65726174ULL));
    double worst = 0.0;
    for (int trial = 0; trial < lists; ++trial) {
      const int m = 2 + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(std::max(1, max_neighbors - 1))));
      NeighborList list;
      list.owner = static_cast<VertexId>(rng.below(1000));
      std::set<VertexId> ids;
      while (static_cast<int>(ids.size()) < m) {
        ids.insert(static_cast<VertexId>(rng.below(100000)));
      }
      for (VertexId id : ids) list.entries.push_back({id, 0.01 + 10.0 * rng.next_double()});
      const Eigen::MatrixXd diff = enumerate_expectation(list) - exact_clique(list);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
    const bool pass = worst <= 1e-12;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " enumeration: max |E[sampled] - exact| = "
              << worst << " over " << lists << " lists (tolerance 1e-12)\n";
  }

  if (mode == "monte-carlo" || mode == "both") {
    const VertexId n = static_cast<VertexId>(mc_vertices);
    LaplacianGraph graph = gen_random_connected(n, 2 * n, opts.seed + 1);
    const Ordering ordering = ordering_random(n, opts.seed + 2);
    Eigen::MatrixXd l = dense_laplacian(graph);
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(n, n);
    for (long long t = 0; t < trials; ++t) {
      const LdlFactor f = factor_randomized(
          graph, ordering, opts.seed + 1000 + static_cast<std::uint64_t>(t));
      const Eigen::MatrixXd sample = dense_reconstruct(f);
      const Eigen::MatrixXd delta = sample - mean;
      mean += delta / static_cast<double>(t + 1);
      m2 += delta.cwiseProduct(sample - mean);
    }
    const Eigen::MatrixXd se =
        (m2 / (static_cast<double>(trials) - 1.0) / static_cast<double>(trials)).cwiseSqrt();
    double worst_multiple = 0.0;
    int violations = 0;
    for (VertexId i = 0; i < n; ++i) {
      for (VertexId j = 0; j < n; ++j) {
        const double diff = std::abs(mean(i, j) - l(i, j));
        const double bound = 5.0 * se(i, j) + 1e-12 * l.cwiseAbs().maxCoeff();
        if (diff > bound) ++violations;
        // Skip zero-variance entries whose SE is rounding noise.
        if (se(i, j) > 1e-10) worst_multiple = std::max(worst_multiple, diff / se(i, j));
      }
    }
    const bool pass = violations == 0;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " monte-carlo: " << violations
              << " entries beyond 5 standard errors (worst " << worst_multiple << " SE, "
              << trials << " trials, n=" << n << ")\n";
  }
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized approximate Cholesky preconditioners for graph Laplacians"};
  app.require_subcommand(1);

  CommonOptions opts;

  auto* gen = app.add_subcommand("gen", "generate a test matrix and write it");
  std::string gen_output = "matrix.mtx";
  gen->add_option("--gen", opts.gen, "generator spec")->required();
  gen->add_option("--output", gen_output, "output path");
  opts.add_seed_flag(gen);

  auto* factor = app.add_subcommand("factor", "build an approximate factorization");
  opts.add_input_flags(factor);
  factor->add_option("--ordering", opts.ordering, "natural|random|nnz-sort|file:<path>");
  factor->add_option("--backend", opts.backend, "seq|par-left|par-right|exact");
  factor->add_option("--workers", opts.workers, "worker threads for parallel backends");
  factor->add_option("--arena-budget", opts.arena_budget, "arena cells (default: auto)");
  factor->add_option("--workspace-capacity", opts.workspace_capacity,
                     "right-backend workspace slots (default: auto)");
  factor->add_flag("--identity-hash", opts.identity_hash,
                   "place workspace entries by vertex id instead of a seeded permutation");
  opts.add_seed_flag(factor);
  std::string factor_output, stats_path, trace_path;
  bool record_times = false;
  factor->add_option("--output", factor_output, "factor file stem");
  factor->add_option("--stats", stats_path, "stats JSON path ('-' for stdout)");
  factor->add_option("--trace", trace_path, "per-vertex trace JSON path");
  factor->add_flag("--trace-times", record_times, "record per-vertex completion times");

  auto* solve = app.add_subcommand("solve", "solve L x = b with PCG");
  opts.add_input_flags(solve);
  solve->add_option("--ordering", opts.ordering, "natural|random|nnz-sort|file:<path>");
  solve->add_option("--backend", opts.backend, "seq|par-left|par-right|exact");
  solve->add_option("--workers", opts.workers, "worker threads");
  opts.add_seed_flag(solve);
  std::string factor_stem, perm_path, rhs_path, solution_path, report_path;
  std::string rhs_mode = "random-projected";
  double tol = 1e-6;
  int max_iters = 1000;
  solve->add_option("--factor", factor_stem, "read the factor from this stem");
  solve->add_option("--perm", perm_path, "permutation file for --factor");
  solve->add_option("--rhs", rhs_path, "right-hand side vector file");
  solve->add_option("--rhs-mode", rhs_mode, "random-projected|from-random-x");
  solve->add_option("--tol", tol, "relative residual target");
  solve->add_option("--max-iters", max_iters, "iteration cap");
  solve->add_option("--report", report_path, "report JSON path ('-' for stdout)");
  solve->add_option("--solution", solution_path, "write the solution vector here");

  auto* analyze = app.add_subcommand("analyze", "elimination structure metrics");
  opts.add_input_flags(analyze);
  analyze->add_option("--ordering", opts.ordering, "natural|random|nnz-sort|file:<path>");
  analyze->add_option("--backend", opts.backend, "seq|par-left|par-right|exact");
  opts.add_seed_flag(analyze);
  std::string analyze_csv;
  analyze->add_option("--csv", analyze_csv, "CSV path ('-' for stdout)");

  auto* bench = app.add_subcommand("bench", "factor/solve timing matrix");
  std::string bench_inputs, bench_gens, bench_orderings = "nnz-sort",
                                        bench_backends = "par-left",
                                        bench_workers = "1,2,4,8", bench_seeds = "0";
  int repeats = 3;
  double bench_tol = 1e-6;
  int bench_max_iters = 1000;
  bool bench_solve = false;
  std::string bench_csv;
  bench->add_option("--inputs", bench_inputs, "comma-separated Matrix Market files");
  bench->add_option("--gens", bench_gens, "semicolon-separated generator specs");
  bench->add_option("--orderings", bench_orderings, "comma-separated orderings");
  bench->add_option("--backends", bench_backends, "comma-separated backends");
  bench->add_option("--workers", bench_workers, "comma-separated worker counts");
  bench->add_option("--seeds", bench_seeds, "comma-separated seeds");
  bench->add_option("--repeats", repeats, "repetitions per cell (median reported)");
  bench->add_option("--tol", bench_tol, "solve tolerance");
  bench->add_option("--max-iters", bench_max_iters, "solve iteration cap");
  bench->add_flag("--solve", bench_solve, "also run PCG per cell");
  bench->add_option("--csv", bench_csv, "CSV path ('-' for stdout)");

  auto* check = app.add_subcommand("check-expectation",
                                   "verify that sampling preserves the clique expectation");
  std::string check_mode = "both";
  int check_lists = 1000;
  int check_max_neighbors = 6;
  int check_vertices = 30;
  long long check_trials = 100000;
  check->add_option("--mode", check_mode, "enumeration|monte-carlo|both");
  check->add_option("--lists", check_lists, "random neighbor lists for enumeration");
  check->add_option("--max-neighbors", check_max_neighbors, "neighbor cap per list");
  check->add_option("--n", check_vertices, "graph size for the Monte Carlo check");
  check->add_option("--trials", check_trials, "Monte Carlo factorization count");
  opts.add_seed_flag(check);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(opts, gen_output);
    if (factor->parsed()) {
      return cmd_factor(opts, factor_output, stats_path, trace_path, record_times);
    }
    if (solve->parsed()) {
      return cmd_solve(opts, factor_stem, perm_path, rhs_path, rhs_mode, tol, max_iters,
                       report_path, solution_path);
    }
    if (analyze->parsed()) return cmd_analyze(opts, analyze_csv);
    if (bench->parsed()) {
      return cmd_bench(bench_inputs, bench_gens, bench_orderings, bench_backends,
                       bench_workers, bench_seeds, repeats, bench_tol, bench_max_iters,
                       bench_solve, bench_csv);
    }
    if (check->parsed()) {
      return cmd_check_expectation(opts, check_mode, check_lists, check_max_neighbors,
                                   check_vertices, check_trials);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
