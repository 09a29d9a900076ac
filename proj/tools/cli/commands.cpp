#include "commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "csv_io.hpp"
#include "expr.hpp"
#include "fracinv/error.hpp"
#include "fracinv/fracops.hpp"
#include "fracinv/inverse1.hpp"
#include "fracinv/inverse2.hpp"
#include "fracinv/specfun.hpp"
#include "fracinv/verify.hpp"
#include "json.hpp"
#include "problem_file.hpp"
#include "svg_plot.hpp"

namespace fracinv::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Runs f(i) for i in [0, n) on up to `threads` workers with a static
// interleaved split; the first exception thrown is rethrown here.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

// A failure inside a named numerical stage.
struct StageError {
  std::string stage;
  std::string what;
};

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const AccuracyError& e) {
    throw StageError{name, e.what()};
  } catch (const ConvergenceError& e) {
    throw StageError{name, e.what()};
  } catch (const DomainError& e) {
    throw StageError{name, e.what()};
  }
}

struct Field {
  std::vector<double> ts;
  std::vector<double> xs;
  std::vector<double> u;  // ts.size() x xs.size(), t-outer
  std::vector<double> h;
  int requested = 0;
  int effective = 0;
  double max_est_error = 0.0;
  std::vector<std::string> warnings;
  double residual = 0.0;
  std::vector<double> residual_ts;
  std::vector<double> residual_xs;
};

std::vector<double> residual_x_points(const std::vector<double>& xs) {
  const std::size_t stride = std::max<std::size_t>(1, (xs.size() + 9) / 10);
  std::vector<double> out;
  for (std::size_t i = 0; i < xs.size(); i += stride) out.push_back(xs[i]);
  if (out.back() != xs.back()) out.push_back(xs.back());
  return out;
}

// Evaluates U on ts x xs: amplitudes per t, then the synthesis per x row.
template <class Amp, class Synth>
std::vector<double> grid_values(const std::vector<double>& ts, const std::vector<double>& xs,
                                unsigned threads, Amp&& amp, Synth&& synth) {
  std::vector<std::vector<double>> modes(ts.size());
  parallel_for(ts.size(), threads, [&](std::size_t i) { modes[i] = amp(i, ts[i]); });
  std::vector<double> u(ts.size() * xs.size());
  parallel_for(xs.size(), threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < ts.size(); ++i) u[i * xs.size() + j] = synth(modes[i], xs[j]);
  });
  return u;
}

Field solve_space_degenerate(const ProblemFile& p, const std::vector<double>& ts,
                             bool with_h, unsigned threads) {
  Problem1Spec spec{p.alpha, p.T, parse_expression(p.data_first), parse_expression(p.data_second),
                    p.truncation};
  const Problem1Solution sol = stage("solve_problem1", [&] { return solve_problem1(spec); });
  Field f;
  f.ts = ts;
  f.xs = p.x_grid();
  f.requested = p.truncation;
  f.effective = sol.v_coeffs.truncation;
  f.warnings = sol.warnings;
  std::vector<double> est(ts.size(), 0.0);
  f.u = stage("eval_U", [&] {
    return grid_values(
        f.ts, f.xs, threads,
        [&](std::size_t i, double t) { return mode_amplitudes(sol, t, &est[i]); },
        [&](const std::vector<double>& m, double x) { return eval_U_from_modes(sol, m, x); });
  });
  f.max_est_error = sol.max_est_error;
  for (double e : est) f.max_est_error = std::max(f.max_est_error, e);
  if (with_h) {
    f.h = stage("eval_h", [&] {
      std::vector<double> h(f.xs.size());
      parallel_for(f.xs.size(), threads, [&](std::size_t j) { h[j] = eval_h(sol, f.xs[j]); });
      return h;
    });
  }
  return f;
}

Field solve_time_degenerate(const ProblemFile& p, const std::vector<double>& ts, bool with_h,
                            unsigned threads) {
  Problem2Spec spec{p.alpha, p.beta, p.T, parse_expression(p.data_first),
                    parse_expression(p.data_second), p.truncation};
  const Problem2Solution sol = stage("solve_problem2", [&] { return solve_problem2(spec); });
  Field f;
  f.ts = ts;
  f.xs = p.x_grid();
  f.requested = p.truncation;
  f.effective = sol.effective_K;
  f.warnings = sol.warnings;
  f.max_est_error = sol.max_est_error;
  f.u = stage("eval_u2", [&] {
    return grid_values(
        f.ts, f.xs, threads, [&](std::size_t, double t) { return mode_amplitudes(sol, t); },
        [&](const std::vector<double>& m, double x) { return eval_u2_from_modes(sol, m, x); });
  });
  if (with_h) {
    f.h = stage("eval_h2", [&] {
      std::vector<double> h(f.xs.size());
      parallel_for(f.xs.size(), threads, [&](std::size_t j) { h[j] = eval_h2(sol, f.xs[j]); });
      return h;
    });
  }
  return f;
}

void add_residual(const ProblemFile& p, Field& f, double dt) {
  const double t_lo = p.kind == ProblemKind::TimeDegenerate ? 0.1 * p.T : 0.0;
  for (double t : f.ts) {
    if (t > t_lo && t >= dt) f.residual_ts.push_back(t);
  }
  if (f.residual_ts.empty()) f.residual_ts.push_back(p.T);
  f.residual_xs = residual_x_points(f.xs);
  if (p.kind == ProblemKind::SpaceDegenerate) {
    Problem1Spec spec{p.alpha, p.T, parse_expression(p.data_first),
                      parse_expression(p.data_second), p.truncation};
    const Problem1Solution sol = solve_problem1(spec);
    f.residual = stage("residual_problem1",
                       [&] { return residual_problem1(sol, f.residual_ts, f.residual_xs, dt); });
  } else {
    Problem2Spec spec{p.alpha, p.beta, p.T, parse_expression(p.data_first),
                      parse_expression(p.data_second), p.truncation};
    const Problem2Solution sol = solve_problem2(spec);
    f.residual = stage("residual_problem2",
                       [&] { return residual_problem2(sol, f.residual_ts, f.residual_xs, dt); });
  }
}

Field solve_field(const ProblemFile& p, const std::vector<double>& ts, bool with_h,
                  unsigned threads) {
  return p.kind == ProblemKind::SpaceDegenerate ? solve_space_degenerate(p, ts, with_h, threads)
                                                : solve_time_degenerate(p, ts, with_h, threads);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string t_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t = %g", t);
  return buf;
}

}  // namespace

std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("FRACINV_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-') {
    throw std::invalid_argument("FRACINV_SEED is not an unsigned integer: '" + std::string(s) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  ProblemFile p;
  try {
    p = load_problem(opt.input);
  } catch (const std::exception& e) {
    err << "fracinv solve: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opt.verify && !(opt.dt > 0.0 && opt.dt < p.T)) {
    err << "fracinv solve: --dt must lie in (0, T)\n";
    return kExitUsage;
  }
  try {
    const fs::path dir(opt.output_dir);
    fs::create_directories(dir);

    Field f = solve_field(p, p.t_grid(), true, opt.threads);
    if (opt.verify) add_residual(p, f, opt.dt);

    Table u{{"t", "x", "value"}, {}};
    u.rows.reserve(f.u.size());
    for (std::size_t i = 0; i < f.ts.size(); ++i) {
      for (std::size_t j = 0; j < f.xs.size(); ++j) {
        u.rows.push_back({f.ts[i], f.xs[j], f.u[i * f.xs.size() + j]});
      }
    }
    write_csv((dir / "U.csv").string(), u);

    Table h{{"x", "value"}, {}};
    for (std::size_t j = 0; j < f.xs.size(); ++j) h.rows.push_back({f.xs[j], f.h[j]});
    write_csv((dir / "h.csv").string(), h);

    if (p.sweep) {
      Table s{{"alpha", "x", "value"}, {}};
      for (double a : p.sweep->values) {
        ProblemFile q = p;
        q.alpha = a;
        const Field g = solve_field(q, {p.sweep->t}, false, opt.threads);
        for (std::size_t j = 0; j < g.xs.size(); ++j) s.rows.push_back({a, g.xs[j], g.u[j]});
      }
      write_csv((dir / "sweep.csv").string(), s);
    }

    json meta;
    meta["problem"] = p.source;
    meta["effective_truncation"] = f.effective;
    meta["requested_truncation"] = f.requested;
    meta["max_est_error"] = finite_or_null(f.max_est_error);
    meta["warnings"] = f.warnings;
    meta["x_range"] = {p.x_lo(), p.x_hi()};
    meta["t_range"] = {p.t_min, p.T};
    write_json(dir / "meta.json", meta);

    if (opt.verify) {
      json r;
      r["dt"] = opt.dt;
      r["max_residual"] = finite_or_null(f.residual);
      r["t_points"] = f.residual_ts;
      r["x_points"] = f.residual_xs;
      write_json(dir / "residual.json", r);
      out << "max residual " << format_double(f.residual) << " at dt " << opt.dt << '\n';
    }
    for (const auto& w : f.warnings) err << "warning: " << w << '\n';
    out << "wrote " << u.rows.size() << " grid values to " << dir.string() << '\n';
  } catch (const StageError& e) {
    err << "fracinv solve: " << e.stage << " failed: " << e.what << '\n';
    return kExitNumerical;
  } catch (const ParseError& e) {
    err << "fracinv solve: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fracinv solve: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_plot(const PlotOptions& opt, std::ostream& out, std::ostream& err) {
  const fs::path dir(opt.output_dir);
  try {
    const Table u = read_csv((dir / "U.csv").string());
    const Table h = read_csv((dir / "h.csv").string());
    if (u.header.size() != 3 || h.header.size() != 2) {
      throw std::runtime_error("unexpected CSV layout in " + dir.string());
    }
    if (u.rows.empty() || h.rows.empty()) throw std::runtime_error("empty grid in " + dir.string());

    std::string field_name = "U";
    double T = u.rows.back()[0];
    std::vector<double> file_times;
    if (fs::exists(dir / "meta.json")) {
      std::ifstream in(dir / "meta.json");
      const json meta = json::parse(in);
      T = meta.at("problem").at("T").get<double>();
      if (meta.at("problem").at("problem") == "time_degenerate") field_name = "u";
      if (meta.at("problem").contains("plot_times")) {
        file_times = meta.at("problem").at("plot_times").get<std::vector<double>>();
      }
    }

    // U.csv is t-outer; collect the distinct times in order.
    std::map<double, Series> by_t;
    for (const auto& r : u.rows) {
      Series& s = by_t[r[0]];
      s.x.push_back(r[1]);
      s.y.push_back(r[2]);
    }
    std::vector<double> wanted = opt.times;
    if (wanted.empty()) wanted = file_times;
    if (wanted.empty()) {
      for (double c : {0.1, 0.25, 0.5, 0.75, 1.0}) wanted.push_back(c * T);
    }
    Plot pu{field_name + "(t, x)", "x", field_name, {}};
    std::vector<double> used;
    for (double t : wanted) {
      auto best = by_t.begin();
      for (auto it = by_t.begin(); it != by_t.end(); ++it) {
        if (std::abs(it->first - t) < std::abs(best->first - t)) best = it;
      }
      if (std::find(used.begin(), used.end(), best->first) != used.end()) continue;
      used.push_back(best->first);
      Series s = best->second;
      s.label = t_label(best->first);
      pu.series.push_back(std::move(s));
    }
    write_svg((dir / "U.svg").string(), pu);

    Series hs{"h", {}, {}};
    for (const auto& r : h.rows) {
      hs.x.push_back(r[0]);
      hs.y.push_back(r[1]);
    }
    write_svg((dir / "h.svg").string(), Plot{"h(x)", "x", "h", {hs}});

    if (fs::exists(dir / "sweep.csv")) {
      const Table sw = read_csv((dir / "sweep.csv").string());
      std::map<double, Series> by_a;
      for (const auto& r : sw.rows) {
        Series& s = by_a[r[0]];
        s.x.push_back(r[1]);
        s.y.push_back(r[2]);
      }
      Plot ps{field_name + " for several alpha", "x", field_name, {}};
      for (auto& [a, s] : by_a) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "alpha = %g", a);
        s.label = buf;
        ps.series.push_back(std::move(s));
      }
      write_svg((dir / "sweep.svg").string(), ps);
    }
    out << "wrote plots to " << dir.string() << '\n';
  } catch (const std::exception& e) {
    err << "fracinv plot: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  std::uint64_t seed = kDefaultSeed;
  try {
    if (opt.seed) seed = *opt.seed;
    else if (auto env = seed_from_env()) seed = *env;
    suite_manifest(opt.suite);
  } catch (const std::exception& e) {
    err << "fracinv verify: " << e.what() << '\n';
    return kExitUsage;
  }
  const std::vector<CheckResult> results = run_suite(opt.suite, seed);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << format_double(r.measured)
        << " threshold=" << format_double(r.threshold);
    if (!r.details.empty()) out << "  (" << r.details << ")";
    out << '\n';
  }
  out << results.size() - failed << "/" << results.size() << " checks passed (seed " << seed
      << ")\n";
  if (!opt.report_path.empty()) {
    std::ofstream rep(opt.report_path, std::ios::binary);
    if (!rep) {
      err << "fracinv verify: cannot write '" << opt.report_path << "'\n";
      return kExitUsage;
    }
    rep << report_json(results);
  }
  return failed == 0 ? kExitOk : kExitChecksFailed;
}

int cmd_specfun_eval(const SpecfunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    json j;
    if (opt.function == "gamma") {
      j["value"] = finite_or_null(gamma_fn(opt.z));
    } else {
      EvalResult r;
      if (opt.function == "ml") {
        r = opt.deriv == 0 ? mittag_leffler({opt.alpha, opt.beta}, opt.z)
                           : mittag_leffler_deriv({opt.alpha, opt.beta}, opt.deriv, opt.z);
      } else if (opt.function == "gml") {
        r = gen_mittag_leffler({opt.alpha, opt.m, opt.n}, opt.z);
      } else {
        err << "fracinv specfun eval: unknown function '" << opt.function << "'\n";
        return kExitUsage;
      }
      j["value"] = finite_or_null(r.value);
      j["est_abs_error"] = finite_or_null(r.est_abs_error);
      j["terms_used"] = r.terms_used;
    }
    out << j.dump() << '\n';
  } catch (const DomainError& e) {
    err << "fracinv specfun eval: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fracinv specfun eval: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_fracops_eval(const FracopsOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (!(opt.t > 0.0) || opt.steps < 1) throw DomainError("need t > 0 and steps >= 1");
    const auto f = parse_expression(opt.f, "t");
    const TimeGrid grid{opt.t, opt.steps};
    const std::vector<double> samples = grid.sample(f);
    double v = 0.0;
    if (opt.op == "integral") v = rl_integral_num(samples, opt.alpha, grid, opt.steps);
    else if (opt.op == "caputo") v = caputo_deriv_num(samples, opt.alpha, grid, opt.steps);
    else if (opt.op == "rl") v = rl_deriv_num(samples, opt.alpha, grid, opt.steps);
    else {
      err << "fracinv fracops eval: unknown op '" << opt.op << "'\n";
      return kExitUsage;
    }
    out << format_double(v) << '\n';
  } catch (const ParseError& e) {
    err << "fracinv fracops eval: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "fracinv fracops eval: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fracinv fracops eval: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace fracinv::cli
