#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cli/csv.hpp"
#include "greenassoc/association.hpp"
#include "greenassoc/config.hpp"
#include "greenassoc/fixed_point.hpp"
#include "greenassoc/simulator.hpp"

namespace greenassoc::cli {

enum class Engine { Analytic, Simulation };

std::string_view to_string(Engine engine);
/// "analytic", "sim" or "both".
std::vector<Engine> parse_engines(std::string_view text);

/// Parameters a sweep may vary.
///
/// beta_a also sets beta_eh, so CA-Abeta and CA-Fbeta share the bias axis.
/// mean_spacing_r and hybrid_fraction_c move along (R, c) keeping the other
/// fixed; og_spacing_r sets lambda_og = 1/(pi r^2), `inf` for none.
const std::vector<std::string>& sweep_parameters();

struct SweepSpec {
  std::string param;
  std::vector<double> values;
  std::vector<Scheme::Kind> schemes;
  std::vector<Engine> engines;
};

/// Throws std::invalid_argument for an unknown parameter, an empty grid or a
/// grid that is not strictly increasing.
void check_sweep(const SweepSpec& spec);

/// "0.5,1,2" or "start:stop:step" (inclusive, within 1e-9 of stop).
std::vector<double> parse_grid(std::string_view text);

NetworkConfig apply_parameter(NetworkConfig config, std::string_view param, double value);

struct RunOptions {
  SolverOptions solver;
  SimulationOptions simulation;
  /// Fill runtime_s; off by default so reruns are byte-identical.
  bool timing = false;
  /// Progress hook: called once per finished row, before derived columns are filled.
  std::function<void(const ResultRow&)> on_row;
};

/// One row per (value, scheme, engine) in that nesting order, derived columns filled.
/// Rows whose inputs do not change along the grid are computed once and reused.
struct SweepResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
};
SweepResult run_sweep(const NetworkConfig& base, const SweepSpec& spec, const RunOptions& options = {});

/// A single evaluation with the given engine.
ResultRow evaluate(const NetworkConfig& config, Scheme::Kind kind, Engine engine, const RunOptions& options);

}  // namespace greenassoc::cli
