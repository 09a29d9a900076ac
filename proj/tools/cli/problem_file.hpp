#pragma once

// JSON problem files.
//
//   {
//     "problem": "space_degenerate" | "time_degenerate",
//     "alpha": 0.6,
//     "beta": 0.5,                      // time_degenerate only
//     "T": 1.0,
//     "data": {"v": "...", "w": "..."}  // or {"phi": "...", "psi": "..."}
//     "truncation": 32,
//     "grid": {"t_points": 21, "x_points": 101, "t_min": 0.0},
//     "plot_times": [0.1, 0.5, 1.0],    // optional
//     "alpha_sweep": {"values": [0.3, 0.5], "t": 0.5}  // optional
//   }
//
// Unknown keys are rejected. x runs over [-1, 1] for space_degenerate and
// [0, 1] for time_degenerate; t over [t_min, T].

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace fracinv::cli {

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { SpaceDegenerate, TimeDegenerate };

struct AlphaSweep {
  std::vector<double> values;
  double t = 0.5;
};

struct ProblemFile {
  ProblemKind kind = ProblemKind::SpaceDegenerate;
  double alpha = 0.5;
  double beta = 0.0;
  double T = 1.0;
  std::string data_first;   // v or phi
  std::string data_second;  // w or psi
  int truncation = 32;
  int t_points = 11;
  int x_points = 101;
  double t_min = 0.0;
  std::vector<double> plot_times;
  std::optional<AlphaSweep> sweep;
  nlohmann::json source;

  double x_lo() const { return kind == ProblemKind::SpaceDegenerate ? -1.0 : 0.0; }
  double x_hi() const { return 1.0; }
  std::vector<double> t_grid() const;
  std::vector<double> x_grid() const;
};

/// Parses and validates; throws SchemaError with the offending key, ParseError
/// for bad expressions and DomainError for out-of-range parameters.
ProblemFile parse_problem(const nlohmann::json& j);
ProblemFile load_problem(const std::string& path);

}  // namespace fracinv::cli
