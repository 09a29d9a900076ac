#include "problem_file.hpp"

#include <fstream>
#include <set>

#include "expr.hpp"
#include "fracinv/inverse1.hpp"
#include "fracinv/inverse2.hpp"

namespace fracinv::cli {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (allowed.count(key) == 0) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

const json& required(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw SchemaError("'" + key + "' must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw SchemaError("'" + key + "' must be an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw SchemaError("'" + key + "' must be a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& key) {
  if (!j.is_array()) throw SchemaError("'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, key));
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = b;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
  }
  return out;
}

}  // namespace

std::vector<double> ProblemFile::t_grid() const { return linspace(t_min, T, t_points); }
std::vector<double> ProblemFile::x_grid() const { return linspace(x_lo(), x_hi(), x_points); }

ProblemFile parse_problem(const json& j) {
  only_keys(j, {"problem", "alpha", "beta", "T", "data", "truncation", "grid", "plot_times",
                "alpha_sweep"},
            "problem file");
  ProblemFile p;
  p.source = j;
  const std::string kind = text(required(j, "problem", "problem file"), "problem");
  if (kind == "space_degenerate") p.kind = ProblemKind::SpaceDegenerate;
  else if (kind == "time_degenerate") p.kind = ProblemKind::TimeDegenerate;
  else throw SchemaError("'problem' must be space_degenerate or time_degenerate");
  const bool td = p.kind == ProblemKind::TimeDegenerate;

  p.alpha = number(required(j, "alpha", "problem file"), "alpha");
  p.T = number(required(j, "T", "problem file"), "T");
  if (td) p.beta = number(required(j, "beta", "problem file"), "beta");
  else if (j.contains("beta")) throw SchemaError("'beta' only applies to time_degenerate");

  const std::string a = td ? "phi" : "v";
  const std::string b = td ? "psi" : "w";
  const json& data = required(j, "data", "problem file");
  only_keys(data, {a, b}, "data");
  p.data_first = text(required(data, a, "data"), a);
  p.data_second = text(required(data, b, "data"), b);

  if (j.contains("truncation")) p.truncation = integer(j.at("truncation"), "truncation");
  if (p.truncation < (td ? 1 : 0)) throw SchemaError("'truncation' out of range");

  const json& grid = required(j, "grid", "problem file");
  only_keys(grid, {"t_points", "x_points", "t_min"}, "grid");
  p.t_points = integer(required(grid, "t_points", "grid"), "t_points");
  p.x_points = integer(required(grid, "x_points", "grid"), "x_points");
  if (grid.contains("t_min")) p.t_min = number(grid.at("t_min"), "t_min");
  if (p.t_points < 1 || p.x_points < 1) throw SchemaError("grid: point counts must be >= 1");
  if (!(p.t_min >= 0.0 && p.t_min <= p.T)) throw SchemaError("grid: t_min must lie in [0, T]");

  if (j.contains("plot_times")) p.plot_times = numbers(j.at("plot_times"), "plot_times");

  if (j.contains("alpha_sweep")) {
    const json& s = j.at("alpha_sweep");
    only_keys(s, {"values", "t"}, "alpha_sweep");
    AlphaSweep sw;
    sw.values = numbers(required(s, "values", "alpha_sweep"), "values");
    if (s.contains("t")) sw.t = number(s.at("t"), "t");
    if (sw.values.empty()) throw SchemaError("alpha_sweep: 'values' is empty");
    p.sweep = sw;
  }

  // Re-validate against the solver's own preconditions.
  if (td) {
    Problem2Spec spec{p.alpha, p.beta, p.T, parse_expression(p.data_first),
                      parse_expression(p.data_second), p.truncation};
    validate(spec);
  } else {
    Problem1Spec spec{p.alpha, p.T, parse_expression(p.data_first),
                      parse_expression(p.data_second), p.truncation};
    validate(spec);
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return parse_problem(j);
}

}  // namespace fracinv::cli
