#pragma once

// Verbs of the fracinv tool. Each returns the process exit code:
// 0 success, 1 parse or usage error, 2 numerical error, 3 failed checks.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracinv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitChecksFailed = 3;

struct SolveOptions {
  std::string input;
  std::string output_dir;
  bool verify = false;
  double dt = 1e-4;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct PlotOptions {
  std::string output_dir;
  std::vector<double> times;  // empty: {0.1, 0.25, 0.5, 0.75, 1} * T
};

struct VerifyOptions {
  std::string suite = "all";
  std::string report_path;
  std::optional<std::uint64_t> seed;  // falls back to FRACINV_SEED, then 42
};

struct SpecfunOptions {
  std::string function = "ml";  // ml, gml, gamma
  double alpha = 1.0;
  double beta = 1.0;
  double m = 1.0;
  double n = 1.0;
  double z = 0.0;
  int deriv = 0;
};

struct FracopsOptions {
  std::string op = "caputo";  // integral, caputo, rl
  double alpha = 0.5;
  std::string f = "t";
  double t = 1.0;
  std::size_t steps = 1000;
};

int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_specfun_eval(const SpecfunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fracops_eval(const FracopsOptions& opt, std::ostream& out, std::ostream& err);

/// Parses FRACINV_SEED; nullopt when unset, throws std::invalid_argument
/// when set but not an unsigned integer.
std::optional<std::uint64_t> seed_from_env();

}  // namespace fracinv::cli
