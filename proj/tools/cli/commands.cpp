#include "cli/commands.hpp"

#include <fstream>
#include <sstream>

#include "cli/csv.hpp"
#include "cli/sweep.hpp"
#include "cli/validation.hpp"
#include "greenassoc/config_io.hpp"
#include "greenassoc/fixed_point.hpp"

namespace greenassoc::cli {

namespace {

std::vector<Scheme::Kind> selected_schemes(const CommonOptions& options) {
  if (options.schemes.empty())
    return {Scheme::Kind::NoBias, Scheme::Kind::AdaptiveBias, Scheme::Kind::FixedBias, Scheme::Kind::BestCA};
  std::vector<Scheme::Kind> kinds;
  for (const std::string& name : options.schemes) {
    const auto kind = Scheme::parse_kind(name);
    if (!kind) throw std::invalid_argument("unknown scheme '" + name + "'");
    kinds.push_back(*kind);
  }
  return kinds;
}

SolverOptions solver_options(const CommonOptions& options) {
  SolverOptions s;
  if (options.tol) s.tol = *options.tol;
  return s;
}

RunOptions run_options(const CommonOptions& options) {
  RunOptions r;
  r.solver = solver_options(options);
  r.simulation.threads = options.threads;
  r.timing = options.timing;
  return r;
}

/// Writes the CSV to --out or, without it, to `out`.
int emit_csv(const CommonOptions& options, const std::vector<ResultRow>& rows, const std::vector<std::string>& warnings,
             std::ostream& out, std::ostream& err) {
  if (options.out_path.empty()) {
    write_csv(out, rows, warnings);
    return kOk;
  }
  std::ofstream file(options.out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << options.out_path << '\n';
    return kInputError;
  }
  write_csv(file, rows, warnings);
  return file ? kOk : kInputError;
}

std::string summary_line(const ResultRow& row) {
  std::ostringstream s;
  s << row.scheme << " [" << row.engine << "]: outage "
    << (row.metrics.outage_prob ? format_double(*row.metrics.outage_prob) : std::string("undefined (no users)"))
    << ", grid power " << format_double(row.metrics.grid_power_total_mw) << " mW";
  if (row.has_ci)
    s << " (+/- " << format_double(row.metrics.grid_power_ci) << "; outage +/- " << format_double(row.metrics.outage_ci)
      << ")";
  if (!row.metrics.note.empty()) s << ", " << row.metrics.note;
  return s.str();
}

/// Runs one command body, mapping exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

std::optional<NetworkConfig> load_checked(const CommonOptions& options, std::ostream& err) {
  NetworkConfig config = NetworkConfig::defaults();
  try {
    if (!options.config_path.empty()) config = load_config(options.config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return std::nullopt;
  }
  if (options.seed) config.seed = *options.seed;
  if (options.replications) config.replications = *options.replications;
  if (options.slots) config.slots = *options.slots;
  if (options.warmup) config.warmup_slots = *options.warmup;
  const std::vector<Violation> violations = validate(config);
  if (!violations.empty()) {
    err << "error: invalid configuration\n";
    for (const Violation& v : violations) err << "  " << v.field << ": " << v.rule << '\n';
    return std::nullopt;
  }
  return config;
}

int cmd_analyze(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  const auto config = load_checked(options, err);
  if (!config) return kInputError;
  return guarded(err, [&] {
    const SolverOptions solver = solver_options(options);
    std::vector<ResultRow> rows;
    for (Scheme::Kind kind : selected_schemes(options)) {
      const Scheme scheme = Scheme::from_config(kind, *config);
      const Equilibrium eq = solve(*config, scheme, solver);
      ResultRow row;
      row.param = "beta_a";
      row.value = config->beta_a;
      row.scheme = std::string(scheme.name());
      row.engine = std::string(to_string(Engine::Analytic));
      row.metrics = metrics(eq, *config);
      row.seed = config->seed;
      rows.push_back(row);
      out << "# " << summary_line(row) << '\n';
      if (eq.degenerate) {
        out << "#   batteries full by assumption\n";
      } else {
        out << "#   converged in " << eq.iterations << " iterations, residual " << format_double(eq.residual)
            << ", stationarity " << format_double(eq.stationarity_residual) << '\n';
      }
    }
    const std::vector<std::string> warnings = derive_columns(rows);
    return emit_csv(options, rows, warnings, out, err);
  });
}

int cmd_simulate(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  const auto config = load_checked(options, err);
  if (!config) return kInputError;
  return guarded(err, [&] {
    const RunOptions run = run_options(options);
    std::vector<ResultRow> rows;
    for (Scheme::Kind kind : selected_schemes(options)) {
      ResultRow row = evaluate(*config, kind, Engine::Simulation, run);
      row.param = "beta_a";
      row.value = config->beta_a;
      out << "# " << summary_line(row) << '\n';
      rows.push_back(row);
    }
    const std::vector<std::string> warnings = derive_columns(rows);
    return emit_csv(options, rows, warnings, out, err);
  });
}

int cmd_sweep(const CommonOptions& options, const SweepOptions& sweep, std::ostream& out, std::ostream& err) {
  const auto config = load_checked(options, err);
  if (!config) return kInputError;
  return guarded(err, [&] {
    SweepSpec spec;
    spec.param = sweep.param;
    spec.values = parse_grid(sweep.values);
    spec.schemes = selected_schemes(options);
    spec.engines = parse_engines(options.engine);
    check_sweep(spec);
    RunOptions run = run_options(options);
    run.on_row = [&](const ResultRow& row) {
      err << "  " << row.param << "=" << format_double(row.value) << " " << summary_line(row) << '\n';
    };
    const SweepResult result = run_sweep(*config, spec, run);
    for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    return emit_csv(options, result.rows, result.warnings, out, err);
  });
}

int cmd_validate(const CommonOptions& options, const ValidateOptions& validate, std::ostream& out,
                 std::ostream& err) {
  const auto config = load_checked(options, err);
  if (!config) return kInputError;
  return guarded(err, [&] {
    ValidationOptions v;
    v.seed = config->seed;
    v.cross_engine = validate.cross_engine;
    v.debug_double_prx = validate.debug_double_prx;
    v.realizations = validate.realizations;
    v.solver = solver_options(options);
    v.simulation.threads = options.threads;
    const std::vector<CheckResult> results = run_validation(*config, v);
    if (options.out_path.empty()) {
      write_report(out, results);
    } else {
      std::ofstream file(options.out_path, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << options.out_path << '\n';
        return static_cast<int>(kInputError);
      }
      write_report(file, results);
    }
    return static_cast<int>(all_passed(results) ? kOk : kValidationFailure);
  });
}

}  // namespace greenassoc::cli
