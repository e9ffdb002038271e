#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "greenassoc/metrics.hpp"

namespace greenassoc::cli {

/// One (grid value, scheme, engine) result.
struct ResultRow {
  std::string param;
  double value = 0.0;
  std::string scheme;
  std::string engine;
  MetricsReport metrics;
  /// Confidence columns are only meaningful for the simulator.
  bool has_ci = false;
  std::optional<double> gain_rho_pct;
  std::optional<double> outage_loss_ratio;
  std::optional<double> runtime_s;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& csv_columns();

/// Fills the gain and outage-loss columns from the CA-noBeta and Best-CA rows
/// sharing a row's value and engine. Returns one warning per group that lacks them.
std::vector<std::string> derive_columns(std::vector<ResultRow>& rows);

std::string format_row(const ResultRow& row);

/// Header, rows in order, then one `# warning:` line per warning.
void write_csv(std::ostream& out, std::span<const ResultRow> rows, std::span<const std::string> warnings);

}  // namespace greenassoc::cli
