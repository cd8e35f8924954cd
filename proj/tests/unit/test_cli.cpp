#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "semiprox/cli/runs.hpp"

using namespace semiprox;
using namespace semiprox::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "semiprox_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(SEMIPROX_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config lines, comments and lists") {
  const RunConfig c = parse(
      "# toy run\n"
      "method = fista   # trailing comment\n"
      "alpha=40\n"
      "  refinements = 4, 5\n"
      "alphas = 0,40 , 80\n"
      "epsilon = 1e-9\n"
      "count_trials = true\n"
      "\n");
  CHECK(c.method == Method::fista);
  CHECK(c.toy.alpha == 40.0);
  CHECK(c.refinements == std::vector<int>{4, 5});
  CHECK(c.toy.refinement_level == 4);
  CHECK(c.alphas == std::vector<double>{0.0, 40.0, 80.0});
  CHECK(c.solver.epsilon == 1e-9);
  CHECK(c.count_trials);
  CHECK(c.first_order().stop_step_norm == 1e-9);
}

TEST_CASE("bad configs are rejected") {
  CHECK_THROWS_AS(parse("unknown = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("alpha = forty\n"), ConfigError);
  CHECK_THROWS_AS(parse("alpha 40\n"), ConfigError);
  CHECK_THROWS_AS(parse("method = newton\n"), ConfigError);
  CHECK_THROWS_AS(parse("gamma = 1.5\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("c = -1\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("refinements = 0\n").validate(), ConfigError);
}

TEST_CASE("solve writes a stable history") {
  const fs::path dir = scratch_dir();
  const RunConfig cfg = parse("refinements = 3\nalpha = 40\n");
  const RunOutcome a = run_solve(cfg, dir / "a.csv");
  const RunOutcome b = run_solve(cfg, dir / "b.csv");
  const std::string text = slurp(dir / "a.csv");
  CHECK(text == slurp(dir / "b.csv"));
  CHECK(text.substr(0, text.find('\n')) ==
        "k,omega,accepted,step_norm_X,lambda,F,consecutive_accepts,stationarity_residual");
  std::size_t rows = 0;
  for (char ch : text) rows += ch == '\n';
  CHECK(rows == a.result.history.size() + 1);
  CHECK(slurp(dir / "a.csv.summary").find("N=" + std::to_string(a.iterations)) != std::string::npos);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("count_trials switches the reported count") {
  const RunOutcome a = solve_configured(parse("alpha = 80\n"));
  const RunOutcome t = solve_configured(parse("alpha = 80\ncount_trials = true\n"));
  CHECK(a.iterations == a.result.accepted_count());
  CHECK(t.iterations == t.result.trial_count());
  CHECK(t.iterations > a.iterations);
}

TEST_CASE("FISTA needs a convex g") {
  CHECK_NOTHROW(solve_configured(parse("method = fista\nrefinements = 2\nbeta = 1\n")));
  CHECK_THROWS_AS(solve_configured(parse("method = fista\nrefinements = 2\nshift = -0.5\n")), ConfigError);
}

TEST_CASE("table cells match single solves and failures are marked") {
  const fs::path dir = scratch_dir();
  const RunConfig cfg = parse("refinements = 4, 5\nalphas = 0, 40\n");
  const auto cells = run_table(cfg, dir / "grid.tsv");
  REQUIRE(cells.size() == 4);
  for (const auto& c : cells) {
    CHECK(c.ok);
    if (c.alpha == 0.0) CHECK(c.iterations <= 15);
    // per-cell history has as many accepted rows as the grid count
    std::ostringstream tag;
    tag << "grid.tsv.L" << c.refinement << "_alpha" << c.alpha << ".csv";
    std::ifstream in(dir / tag.str());
    std::string line;
    std::getline(in, line);
    int accepted = 0;
    while (std::getline(in, line)) {
      const auto first = line.find(',');
      const auto second = line.find(',', first + 1);
      accepted += line.substr(second + 1, 1) == "1";
    }
    CHECK(accepted == c.iterations);
  }
  RunConfig single = cfg;
  single.toy.refinement_level = 4;
  single.toy.alpha = 40.0;
  CHECK(solve_configured(single).iterations == cells[1].iterations);

  const auto failed = run_table(parse("refinements = 3\nalphas = 80\nmax_outer = 1\n"), dir / "fail.tsv");
  std::ostringstream os;
  write_table(os, failed);
  CHECK(os.str().find("FAIL") != std::string::npos);
}

TEST_CASE("soss table") {
  std::ostringstream os;
  run_soss(parse("case = max_sq\n"), os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "xi,soss_ratio,semismooth_ratio");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0,0");
  }
  CHECK(rows == 40);
  std::ostringstream sink;
  CHECK_THROWS_AS(run_soss(parse("case = cubic\n"), sink), ConfigError);
}

TEST_CASE("exit codes of the tool") {
  const fs::path dir = scratch_dir();
  {
    std::ofstream(dir / "ok.cfg") << "refinements = 3\n";
    std::ofstream(dir / "bad.cfg") << "refinements = three\n";
    std::ofstream(dir / "cap.cfg") << "refinements = 3\nalpha = 80\nmax_outer = 1\n";
    std::ofstream(dir / "soss.cfg") << "case = x3sin\n";
  }
  const std::string out = " --output " + (dir / "tool.csv").string();
  CHECK(run_tool("solve --config " + (dir / "ok.cfg").string() + out) == 0);
  CHECK(run_tool("solve --config " + (dir / "bad.cfg").string() + out) == 1);
  CHECK(run_tool("solve --config " + (dir / "ok.cfg").string() + " --method nope" + out) == 1);
  CHECK(run_tool("solve --config " + (dir / "cap.cfg").string() + out) == 2);
  CHECK(run_tool("soss --config " + (dir / "soss.cfg").string() + out) == 0);
  CHECK(run_tool("frobnicate") == 1);
}
