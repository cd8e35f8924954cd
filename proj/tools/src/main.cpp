// semiprox command line: solve / table / soss / proptest.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "semiprox/cli/runs.hpp"

namespace {

enum Exit { ok = 0, config_error = 1, solver_failure = 2, property_failure = 3 };

struct Flags {
  std::string config;
  std::string output;
  std::string method;
  std::optional<std::uint64_t> seed;
};

semiprox::cli::RunConfig configure(const Flags& f) {
  semiprox::cli::RunConfig cfg;
  if (!f.config.empty()) cfg = semiprox::cli::load_config(f.config);
  if (!f.method.empty()) cfg.method = semiprox::cli::parse_method(f.method);
  if (f.seed) cfg.seed = *f.seed;
  cfg.validate();
  return cfg;
}

int do_solve(const Flags& f) {
  const auto cfg = configure(f);
  const std::string out = f.output.empty() ? "history.csv" : f.output;
  const auto outcome = semiprox::cli::run_solve(cfg, out);
  std::cout << outcome.summary << '\n';
  return outcome.result.converged() ? ok : solver_failure;
}

int do_table(const Flags& f) {
  const auto cfg = configure(f);
  const std::string out = f.output.empty() ? "table.tsv" : f.output;
  const auto cells = semiprox::cli::run_table(cfg, out);
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write " + out);
  semiprox::cli::write_table(file, cells);
  semiprox::cli::write_table(std::cout, cells);
  for (const auto& c : cells)
    if (!c.ok) return solver_failure;
  return ok;
}

int do_soss(const Flags& f) {
  auto cfg = configure(f);
  if (f.output.empty()) {
    semiprox::cli::run_soss(cfg, std::cout);
    return ok;
  }
  std::ofstream file(f.output);
  if (!file) throw std::runtime_error("cannot write " + f.output);
  semiprox::cli::run_soss(cfg, file);
  return ok;
}

int do_proptest(const Flags& f) {
  const auto cfg = configure(f);
  return semiprox::cli::run_proptest(cfg.seed, std::cout) ? ok : property_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Globalized semi-smooth Proximal Newton experiments"};
  app.require_subcommand(1);

  Flags flags;
  auto add_flags = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "key = value configuration file");
    sub->add_option("--output", flags.output, "output file");
    sub->add_option("--method", flags.method, "proxnewton | proxgrad | fista");
    sub->add_option("--seed", flags.seed, "seed for randomized fixtures");
  };
  CLI::App* solve = app.add_subcommand("solve", "run one solver and write its history CSV");
  CLI::App* table = app.add_subcommand("table", "iteration counts over refinements x alphas");
  CLI::App* soss = app.add_subcommand("soss", "remainder ratios of a scalar case");
  CLI::App* proptest = app.add_subcommand("proptest", "run the invariant suites");
  for (CLI::App* sub : {solve, table, soss, proptest}) add_flags(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    if (solve->parsed()) return do_solve(flags);
    if (table->parsed()) return do_table(flags);
    if (soss->parsed()) return do_soss(flags);
    return do_proptest(flags);
  } catch (const semiprox::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const semiprox::SubproblemError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return solver_failure;
  } catch (const semiprox::EvaluationError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return solver_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return solver_failure;
  }
}
