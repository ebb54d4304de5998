#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "parac/matrix_market.hpp"

using namespace parac;

namespace {

namespace fs = std::filesystem;

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() / ("parac_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliFixture() { fs::remove_all(dir); }

  std::string file(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(PARAC_CLI_PATH) + " " + args + " > " +
                            file("stdout.txt") + " 2> " + file("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stdout_text() const {
    std::ifstream in(file("stdout.txt"));
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }
};

}  // namespace

TEST_CASE("factor command reports path-graph statistics") {
  CliFixture cli;
  {
    std::ofstream out(cli.file("p3.mtx"));
    out << "%%MatrixMarket matrix coordinate real symmetric\n3 3 5\n"
        << "1 1 1\n2 1 -1\n2 2 2\n3 2 -1\n3 3 1\n";
  }
  const int code = cli.run("factor --input " + cli.file("p3.mtx") +
                           " --ordering natural --backend seq --seed 0 --stats -");
  CHECK(code == 0);
  const std::string out = cli.stdout_text();
  CHECK(out.find("\"nnz_g\": 5") != std::string::npos);
  CHECK(out.find("\"fill_ratio\": 1.4285714285714286") != std::string::npos);
}

TEST_CASE("factor checksums are worker-independent") {
  CliFixture cli;
  const std::string gen = "--gen poisson3d:n=10,variant=uniform";
  REQUIRE(cli.run("factor " + gen +
                  " --ordering nnz-sort --backend par-left --workers 1 --seed 1 --stats " +
                  cli.file("one.json")) == 0);
  REQUIRE(cli.run("factor " + gen +
                  " --ordering nnz-sort --backend par-left --workers 8 --seed 1 --stats " +
                  cli.file("eight.json")) == 0);
  std::ifstream a(cli.file("one.json")), b(cli.file("eight.json"));
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  auto checksum_of = [](const std::string& text) {
    const auto at = text.find("\"checksum\"");
    return text.substr(at, text.find(',', at) - at);
  };
  CHECK(checksum_of(sa.str()) == checksum_of(sb.str()));
  CHECK(sa.str() != sb.str());  // workers differ in the provenance block
}

TEST_CASE("solve exits zero only when converged") {
  CliFixture cli;
  REQUIRE(cli.run("gen --gen poisson3d:n=6,variant=uniform --output " + cli.file("g.mtx")) ==
          0);
  CHECK(cli.run("solve --input " + cli.file("g.mtx") +
                " --ordering nnz-sort --seed 0 --tol 1e-6") == 0);
  CHECK(cli.run("solve --input " + cli.file("g.mtx") +
                " --ordering nnz-sort --seed 0 --max-iters 1") == 3);
}

TEST_CASE("factor round trips through files for solving") {
  CliFixture cli;
  REQUIRE(cli.run("gen --gen poisson3d:n=6,variant=contrast --output " + cli.file("g.mtx")) ==
          0);
  REQUIRE(cli.run("factor --input " + cli.file("g.mtx") +
                  " --ordering random --seed 3 --backend par-right --workers 2 --output " +
                  cli.file("f")) == 0);
  CHECK(fs::exists(cli.file("f.G.mtx")));
  CHECK(fs::exists(cli.file("f.D.mtx")));
  CHECK(fs::exists(cli.file("f.perm.txt")));
  CHECK(cli.run("solve --input " + cli.file("g.mtx") + " --factor " + cli.file("f") +
                " --seed 3 --report " + cli.file("report.json")) == 0);
}

TEST_CASE("invalid ordering file maps to the NotAPermutation exit code") {
  CliFixture cli;
  {
    std::ofstream out(cli.file("bad.perm"));
    out << "0 0 2\n";
  }
  {
    std::ofstream out(cli.file("p3.mtx"));
    out << "%%MatrixMarket matrix coordinate real symmetric\n3 3 5\n"
        << "1 1 1\n2 1 -1\n2 2 2\n3 2 -1\n3 3 1\n";
  }
  CHECK(cli.run("factor --input " + cli.file("p3.mtx") + " --ordering file:" +
                cli.file("bad.perm")) == 18);
}

TEST_CASE("analyze emits the chain metrics for P3") {
  CliFixture cli;
  {
    std::ofstream out(cli.file("p3.mtx"));
    out << "%%MatrixMarket matrix coordinate real symmetric\n3 3 5\n"
        << "1 1 1\n2 1 -1\n2 2 2\n3 2 -1\n3 3 1\n";
  }
  REQUIRE(cli.run("analyze --input " + cli.file("p3.mtx") + " --ordering natural") == 0);
  const std::string out = cli.stdout_text();
  CHECK(out.find("parac-analyze-v1") != std::string::npos);
  CHECK(out.find(",3,3,3,3,1.42857,3") != std::string::npos);
}

TEST_CASE("bench produces one row per cell and keeps going on errors") {
  CliFixture cli;
  const int code =
      cli.run("bench --gens poisson3d:n=5,variant=uniform --orderings nnz-sort,random "
              "--backends seq,par-left,par-right --workers 1,2 --repeats 1 --csv " +
              cli.file("bench.csv"));
  CHECK(code == 0);
  std::ifstream in(cli.file("bench.csv"));
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line.rfind("schema,", 0) == 0);
  while (std::getline(in, line)) {
    CHECK(line.rfind("parac-bench-v1", 0) == 0);
    ++rows;
  }
  // 2 orderings x (seq + 2 parallel backends x 2 worker counts) = 10 cells.
  CHECK(rows == 10);
}

TEST_CASE("bench non-timing columns are reproducible") {
  CliFixture cli;
  const std::string args =
      "bench --gens poisson3d:n=6,variant=uniform --orderings nnz-sort --backends "
      "par-left --workers 2 --repeats 1 --seeds 5 --solve --csv ";
  REQUIRE(cli.run(args + cli.file("a.csv")) == 0);
  REQUIRE(cli.run(args + cli.file("b.csv")) == 0);
  auto strip_timing = [](const std::string& path) {
    std::ifstream in(path);
    std::string line, out;
    while (std::getline(in, line)) {
      // Drop the two timing columns (6 and 7) and the speedup column (15).
      std::vector<std::string> cols;
      std::string cell;
      std::stringstream row(line);
      // Generator specs are quoted, so a plain comma split would misalign;
      // reassemble quoted cells.
      bool quoted = false;
      std::string current;
      for (char c : line) {
        if (c == '"') quoted = !quoted;
        if (c == ',' && !quoted) {
          cols.push_back(current);
          current.clear();
        } else {
          current += c;
        }
      }
      cols.push_back(current);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i == 6 || i == 7 || i == 15) continue;
        out += cols[i] + "|";
      }
      out += "\n";
    }
    return out;
  };
  CHECK(strip_timing(cli.file("a.csv")) == strip_timing(cli.file("b.csv")));
}

TEST_CASE("check-expectation smoke run") {
  CliFixture cli;
  CHECK(cli.run("check-expectation --mode enumeration --lists 100 --seed 3") == 0);
  CHECK(cli.run("check-expectation --mode monte-carlo --n 12 --trials 2000 --seed 1") == 0);
}

TEST_CASE("PARAC_SEED feeds the default seed and the flag wins") {
  CliFixture cli;
  {
    std::ofstream out(cli.file("p3.mtx"));
    out << "%%MatrixMarket matrix coordinate real symmetric\n3 3 5\n"
        << "1 1 1\n2 1 -1\n2 2 2\n3 2 -1\n3 3 1\n";
  }
  const std::string base = "factor --input " + cli.file("p3.mtx") + " --stats -";
  const std::string with_env = "PARAC_SEED=9 " + std::string(PARAC_CLI_PATH) + " " + base +
                               " > " + cli.file("stdout.txt") + " 2>/dev/null";
  REQUIRE(std::system(with_env.c_str()) == 0);
  CHECK(cli.stdout_text().find("\"seed\": 9") != std::string::npos);

  const std::string flag_wins = "PARAC_SEED=9 " + std::string(PARAC_CLI_PATH) + " " + base +
                                " --seed 4 > " + cli.file("stdout.txt") + " 2>/dev/null";
  REQUIRE(std::system(flag_wins.c_str()) == 0);
  CHECK(cli.stdout_text().find("\"seed\": 4") != std::string::npos);
}
