#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wavelab/solver.hpp"

namespace wavelab::cli {

/// Fit tolerances and ladder settings from the [sweep] section.
struct SweepSettings {
  double mu_max = 1e-2;
  double mu_min = 1e-4;
  std::vector<double> mu_ladder;  // explicit ladder; overrides mu_max/mu_min
  std::vector<double> periods{64.0, 128.0, 256.0};
  double tol_speed = 0.07;
  double tol_sup = 0.07;
  double tol_hs = 0.05;

  std::vector<double> ladder() const;
};

struct OutputSettings {
  std::filesystem::path dir = "out";
  std::string prefix = "wavelab";
  bool plots = false;
};

/// Parsed contents of a sectioned key = value file.
///
///   # comment
///   [section]
///   key = value
///
/// Sections: symbol, nonlinearity, grid, solver, sweep, output. Numbers are
/// decimal text, booleans true/false, lists comma separated.
struct RunConfig {
  SolveConfig solve;
  SweepSettings sweep;
  OutputSettings output;

  /// Throws ConfigError with "line:column: message" on malformed input.
  static RunConfig parse(const std::string& text, const std::string& origin = "<config>");
  static RunConfig load(const std::filesystem::path& path);

  /// Every key in a fixed order with normalised values; parse(canonical()) round-trips.
  std::string canonical() const;
  /// 16 hex digits of the FNV-1a 64 hash of canonical(), [output] excluded.
  std::string hash() const;
};

std::uint64_t fnv1a(const std::string& text);

}  // namespace wavelab::cli
