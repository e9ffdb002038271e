#include "cli/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "greenassoc/config_io.hpp"

namespace greenassoc::cli {

std::string_view to_string(Engine engine) { return engine == Engine::Analytic ? "analytic" : "sim"; }

std::vector<Engine> parse_engines(std::string_view text) {
  if (text == "analytic") return {Engine::Analytic};
  if (text == "sim") return {Engine::Simulation};
  if (text == "both") return {Engine::Analytic, Engine::Simulation};
  throw std::invalid_argument("unknown engine '" + std::string(text) + "' (analytic, sim, both)");
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names = {"beta_a", "mean_spacing_r", "hybrid_fraction_c", "og_spacing_r"};
  return names;
}

void check_sweep(const SweepSpec& spec) {
  const auto& names = sweep_parameters();
  if (std::find(names.begin(), names.end(), spec.param) == names.end())
    throw std::invalid_argument("unknown sweep parameter '" + spec.param + "'");
  if (spec.values.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i)
    if (!(spec.values[i] > spec.values[i - 1])) throw std::invalid_argument("sweep grid must be strictly increasing");
  for (double v : spec.values)
    if (std::isnan(v)) throw std::invalid_argument("sweep grid contains NaN");
  if (spec.schemes.empty()) throw std::invalid_argument("no scheme selected");
  if (spec.engines.empty()) throw std::invalid_argument("no engine selected");
}

namespace {

double parse_number(std::string_view token) {
  std::string s(token);
  s.erase(0, s.find_first_not_of(" \t"));
  s.erase(s.find_last_not_of(" \t") + 1);
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw std::invalid_argument("bad grid value '" + s + "'");
  return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a + 1);
    if (b == std::string_view::npos) throw std::invalid_argument("range grid needs start:stop:step");
    const double start = parse_number(text.substr(0, a));
    const double stop = parse_number(text.substr(a + 1, b - a - 1));
    const double step = parse_number(text.substr(b + 1));
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
      throw std::invalid_argument("range grid needs finite start <= stop and a positive step");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    // Index-based values keep the grid free of accumulated rounding.
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(parse_number(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

NetworkConfig apply_parameter(NetworkConfig config, std::string_view param, double value) {
  if (param == "beta_a") {
    config.beta_a = value;
    config.beta_eh = value;
  } else if (param == "mean_spacing_r") {
    set_harvesting_layout(config, value, hybrid_fraction(config));
  } else if (param == "hybrid_fraction_c") {
    set_harvesting_layout(config, harvesting_spacing(config), value);
  } else if (param == "og_spacing_r") {
    config.lambda_og = density_from_spacing(value);
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + std::string(param) + "'");
  }
  return config;
}

ResultRow evaluate(const NetworkConfig& config, Scheme::Kind kind, Engine engine, const RunOptions& options) {
  const Scheme scheme = Scheme::from_config(kind, config);
  ResultRow row;
  row.scheme = std::string(scheme.name());
  row.engine = std::string(to_string(engine));
  row.seed = config.seed;
  const auto start = std::chrono::steady_clock::now();
  if (engine == Engine::Analytic) {
    row.metrics = analyze(config, scheme, options.solver);
  } else {
    row.metrics = estimate(config, scheme, options.simulation);
    row.has_ci = true;
  }
  if (options.timing)
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

SweepResult run_sweep(const NetworkConfig& base, const SweepSpec& spec, const RunOptions& options) {
  check_sweep(spec);
  // Reference schemes ignore the bias axis and are solved once per engine.
  const bool bias_axis = spec.param == "beta_a";
  std::map<std::pair<Scheme::Kind, Engine>, ResultRow> reused;

  SweepResult result;
  for (double value : spec.values) {
    const NetworkConfig config = apply_parameter(base, spec.param, value);
    const std::vector<Violation> violations = validate(config);
    if (!violations.empty())
      throw ConfigError(spec.param + "=" + format_double(value) + " breaks " + violations.front().field + ": " +
                        violations.front().rule);
    for (Scheme::Kind kind : spec.schemes) {
      const bool bias_free = kind == Scheme::Kind::NoBias || kind == Scheme::Kind::BestCA;
      for (Engine engine : spec.engines) {
        ResultRow row;
        const auto key = std::make_pair(kind, engine);
        if (bias_axis && bias_free && reused.count(key)) {
          row = reused.at(key);
        } else {
          row = evaluate(config, kind, engine, options);
          if (bias_axis && bias_free) reused.emplace(key, row);
        }
        row.param = spec.param;
        row.value = value;
        result.rows.push_back(row);
        if (options.on_row) options.on_row(result.rows.back());
      }
    }
  }
  result.warnings = derive_columns(result.rows);
  return result;
}

}  // namespace greenassoc::cli
