#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "semiprox/cli/run_config.hpp"
#include "semiprox/properties.hpp"

namespace semiprox::cli {

inline constexpr const char* kHistoryHeader =
    "k,omega,accepted,step_norm_X,lambda,F,consecutive_accepts,stationarity_residual";

struct RunOutcome {
  SolveResult result;
  std::string summary;
  int iterations = 0;  ///< accepted steps, or all trials with count_trials
};

/// Builds the configured problem (shift included) and its start point.
CompositeProblem build_problem(const RunConfig& cfg);

RunOutcome solve_configured(const RunConfig& cfg);

void write_history(std::ostream& out, const std::vector<IterationRecord>& history);
std::string summary_line(const RunConfig& cfg, const SolveResult& r);

/// Solves and writes the history CSV to `output` and the summary to
/// `output` + ".summary". Returns the outcome; throws on I/O failure.
RunOutcome run_solve(const RunConfig& cfg, const std::filesystem::path& output);

struct TableCell {
  int refinement = 0;
  double alpha = 0.0;
  bool ok = false;
  int iterations = 0;
};

/// Accepted-iteration grid over refinements x alphas; cells run
/// concurrently, each writing its own history next to `output`.
std::vector<TableCell> run_table(const RunConfig& cfg, const std::filesystem::path& output);
void write_table(std::ostream& out, const std::vector<TableCell>& cells);

/// Remainder ratios of the configured scalar case as CSV.
void run_soss(const RunConfig& cfg, std::ostream& out);

/// Prints one line per property check; true if all passed.
bool run_proptest(std::uint64_t seed, std::ostream& out);

}  // namespace semiprox::cli
