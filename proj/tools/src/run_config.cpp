#include "semiprox/cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace semiprox::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
  }
  return value;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_number<T>(key, item));
  }
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("key '" + key + "': expected a boolean, got '" + text + "'");
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "toy") return ProblemKind::toy;
  if (name == "quadl1") return ProblemKind::quadl1;
  if (name == "soss") return ProblemKind::soss;
  throw ConfigError("unknown problem '" + name + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

template <class T, class Member>
Setter number(Member member) {
  return [member](RunConfig& c, const std::string& k, const std::string& v) {
    std::invoke(member, c) = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"method", [](RunConfig& c, const std::string&, const std::string& v) { c.method = parse_method(v); }},
      {"problem", [](RunConfig& c, const std::string&, const std::string& v) { c.problem = parse_problem(v); }},
      {"alpha", number<double>([](RunConfig& c) -> double& { return c.toy.alpha; })},
      {"beta", number<double>([](RunConfig& c) -> double& { return c.toy.beta; })},
      {"c", number<double>([](RunConfig& c) -> double& { return c.toy.c; })},
      {"rho", number<double>([](RunConfig& c) -> double& { return c.toy.rho; })},
      {"refinements",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.refinements = parse_list<int>(k, v);
         c.toy.refinement_level = c.refinements.front();
       }},
      {"alphas", [](RunConfig& c, const std::string& k, const std::string& v) { c.alphas = parse_list<double>(k, v); }},
      {"gamma", number<double>([](RunConfig& c) -> double& { return c.solver.gamma; })},
      {"epsilon", number<double>([](RunConfig& c) -> double& { return c.solver.epsilon; })},
      {"lambda_tol", number<double>([](RunConfig& c) -> double& { return c.solver.lambda_tol; })},
      {"omega0", number<double>([](RunConfig& c) -> double& { return c.solver.omega0; })},
      {"omega_init", number<double>([](RunConfig& c) -> double& { return c.solver.omega_init; })},
      {"increase_factor", number<double>([](RunConfig& c) -> double& { return c.solver.increase_factor; })},
      {"mbar", number<double>([](RunConfig& c) -> double& { return c.solver.mbar; })},
      {"max_outer", number<int>([](RunConfig& c) -> int& { return c.solver.max_outer; })},
      {"max_iter", number<int>([](RunConfig& c) -> int& { return c.first_order_max_iter; })},
      {"inner_energy_tol", number<double>([](RunConfig& c) -> double& { return c.solver.inner.energy_tol; })},
      {"inner_correction_tol", number<double>([](RunConfig& c) -> double& { return c.solver.inner.correction_tol; })},
      {"inner_max_cycles", number<int>([](RunConfig& c) -> int& { return c.solver.inner.max_cycles; })},
      {"seed", number<std::uint64_t>([](RunConfig& c) -> std::uint64_t& { return c.seed; })},
      {"n", number<Eigen::Index>([](RunConfig& c) -> Eigen::Index& { return c.n; })},
      {"kappa1", number<double>([](RunConfig& c) -> double& { return c.kappa1; })},
      {"kappa2", number<double>([](RunConfig& c) -> double& { return c.kappa2; })},
      {"case", [](RunConfig& c, const std::string&, const std::string& v) { c.soss_case = v; }},
      {"shift", number<double>([](RunConfig& c) -> double& { return c.shift; })},
      {"count_trials", [](RunConfig& c, const std::string& k, const std::string& v) { c.count_trials = parse_bool(k, v); }},
  };
  return table;
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "proxnewton") return Method::proxnewton;
  if (name == "proxgrad") return Method::proxgrad;
  if (name == "fista") return Method::fista;
  throw ConfigError("unknown method '" + name + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::proxnewton: return "proxnewton";
    case Method::proxgrad: return "proxgrad";
    case Method::fista: return "fista";
  }
  return "?";
}

FirstOrderConfig RunConfig::first_order() const {
  FirstOrderConfig f;
  f.initial_step_scale = solver.omega_init;
  f.backtracking_shrink = 1.0 / solver.increase_factor;
  f.max_iter = first_order_max_iter;
  f.stop_step_norm = solver.epsilon;
  f.gamma = solver.gamma;
  f.omega0 = solver.omega0;
  f.mbar = solver.mbar;
  f.max_scale = solver.omega_max;
  f.inner = solver.inner;
  return f;
}

void RunConfig::validate() const {
  solver.validate();
  if (problem == ProblemKind::toy) toy.validate();
  for (int level : refinements)
    if (level < 1 || level > 12) throw ConfigError("refinements must lie in [1, 12]");
  for (double a : alphas)
    if (!(a >= 0.0)) throw ConfigError("alphas must be non-negative");
  if (problem == ProblemKind::quadl1) {
    if (n <= 0) throw ConfigError("n must be positive");
    if (!(kappa1 >= 0.0 && kappa2 >= 0.0 && kappa1 + kappa2 > 0.0))
      throw ConfigError("kappa1, kappa2 must be non-negative with a positive sum");
  }
  if (first_order_max_iter <= 0) throw ConfigError("max_iter must be positive");
  if (method != Method::proxnewton) first_order().validate();
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError("line " + std::to_string(number) + ": empty value");
    it->second(cfg, key, value);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in);
}

}  // namespace semiprox::cli
