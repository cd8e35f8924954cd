#include "semiprox/cli/runs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <sstream>

#include "semiprox/problems/quadratic_l1.hpp"
#include "semiprox/problems/soss.hpp"

namespace semiprox::cli {
namespace {

void put_number(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), ptr - buf.data());
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const std::string& suffix) {
  return base.string() + suffix;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

CompositeProblem build_problem(const RunConfig& cfg) {
  CompositeProblem p;
  switch (cfg.problem) {
    case ProblemKind::toy:
      p = problems::make_toy_problem(cfg.toy);
      break;
    case ProblemKind::quadl1: {
      problems::QuadraticL1Options o;
      o.n = cfg.n;
      o.seed = cfg.seed;
      o.kappa1 = cfg.kappa1;
      o.kappa2 = cfg.kappa2;
      p = problems::make_quadratic_l1(o).problem;
      break;
    }
    case ProblemKind::soss:
      throw ConfigError("problem 'soss' has no solver; use the soss verb");
  }
  return cfg.shift != 0.0 ? shift_problem(p, cfg.shift) : p;
}

RunOutcome solve_configured(const RunConfig& cfg) {
  cfg.validate();
  const CompositeProblem p = build_problem(cfg);
  const PrimalVector x0 = PrimalVector::zero(p.size());
  RunOutcome out;
  switch (cfg.method) {
    case Method::proxnewton: out.result = solve(p, x0, cfg.solver); break;
    case Method::proxgrad: out.result = prox_gradient_solve(p, x0, cfg.first_order()); break;
    case Method::fista: out.result = fista_solve(p, x0, cfg.first_order()); break;
  }
  out.iterations = cfg.count_trials ? out.result.trial_count() : out.result.accepted_count();
  out.summary = summary_line(cfg, out.result);
  return out;
}

void write_history(std::ostream& out, const std::vector<IterationRecord>& history) {
  out << kHistoryHeader << '\n';
  for (const IterationRecord& r : history) {
    out << r.k << ',';
    put_number(out, r.omega);
    out << ',' << (r.accepted ? 1 : 0) << ',';
    put_number(out, r.step_norm_X);
    out << ',';
    put_number(out, r.lambda_value);
    out << ',';
    put_number(out, r.F_value);
    out << ',' << r.consecutive_accepts << ',';
    put_number(out, r.stationarity_residual);
    out << '\n';
  }
}

std::string summary_line(const RunConfig& cfg, const SolveResult& r) {
  std::ostringstream os;
  const double residual = r.history.empty() ? 0.0 : r.history.back().stationarity_residual;
  os << "method=" << to_string(cfg.method) << " status=" << to_string(r.status)
     << " N=" << r.accepted_count() << " trials=" << r.trial_count() << " F=";
  put_number(os, r.final_F());
  os << " residual=";
  put_number(os, residual);
  os << " F0=";
  put_number(os, r.initial_F);
  return os.str();
}

RunOutcome run_solve(const RunConfig& cfg, const std::filesystem::path& output) {
  RunOutcome out = solve_configured(cfg);
  {
    std::ofstream csv = open_output(output);
    write_history(csv, out.result.history);
  }
  std::ofstream summary = open_output(with_suffix(output, ".summary"));
  summary << out.summary << '\n';
  return out;
}

std::vector<TableCell> run_table(const RunConfig& cfg, const std::filesystem::path& output) {
  const std::vector<int> levels =
      cfg.refinements.empty() ? std::vector<int>{cfg.toy.refinement_level} : cfg.refinements;
  const std::vector<double> alphas =
      cfg.alphas.empty() ? std::vector<double>{cfg.toy.alpha} : cfg.alphas;

  std::vector<std::future<TableCell>> jobs;
  for (int level : levels) {
    for (double alpha : alphas) {
      jobs.push_back(std::async(std::launch::async, [cfg, level, alpha, output] {
        RunConfig cell = cfg;
        cell.problem = ProblemKind::toy;
        cell.toy.refinement_level = level;
        cell.toy.alpha = alpha;
        TableCell result{level, alpha, false, 0};
        std::ostringstream tag;
        tag << ".L" << level << "_alpha" << alpha << ".csv";
        try {
          const RunOutcome o = run_solve(cell, with_suffix(output, tag.str()));
          result.ok = o.result.converged();
          result.iterations = o.iterations;
        } catch (const std::exception&) {
          result.ok = false;
        }
        return result;
      }));
    }
  }
  std::vector<TableCell> cells;
  for (auto& j : jobs) cells.push_back(j.get());
  return cells;
}

void write_table(std::ostream& out, const std::vector<TableCell>& cells) {
  std::vector<double> alphas;
  for (const TableCell& c : cells)
    if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) alphas.push_back(c.alpha);
  out << "h";
  for (double a : alphas) out << "\talpha=" << a;
  out << '\n';
  int current = -1;
  for (const TableCell& c : cells) {
    if (c.refinement != current) {
      if (current != -1) out << '\n';
      current = c.refinement;
      out << "2^-" << c.refinement;
    }
    out << '\t';
    if (c.ok) out << c.iterations;
    else out << "FAIL";
  }
  if (current != -1) out << '\n';
}

void run_soss(const RunConfig& cfg, std::ostream& out) {
  problems::ScalarSossCase c;
  try {
    c = problems::soss_case(cfg.soss_case);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  out << "xi,soss_ratio,semismooth_ratio\n";
  for (const auto& row : problems::remainder_table(c, 40)) {
    put_number(out, row.xi);
    out << ',';
    put_number(out, row.soss_ratio);
    out << ',';
    put_number(out, row.semismooth_ratio);
    out << '\n';
  }
}

bool run_proptest(std::uint64_t seed, std::ostream& out) {
  bool all = true;
  for (const auto& r : properties::run_all(seed)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
    all = all && r.passed;
  }
  return all;
}

}  // namespace semiprox::cli
