#include "cli/csv.hpp"

#include <map>
#include <tuple>

#include "greenassoc/association.hpp"
#include "greenassoc/config_io.hpp"

namespace greenassoc::cli {

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "param", "value", "scheme", "engine", "outage_prob", "outage_ci",
      "grid_power_total_mw", "grid_power_ci", "gain_rho_pct", "outage_loss_ratio", "runtime_s", "seed"};
  return columns;
}

std::vector<std::string> derive_columns(std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, double, std::string>;
  std::map<Key, const ResultRow*> nobias;
  std::map<Key, const ResultRow*> best;
  const std::string nobias_name(Scheme::name(Scheme::Kind::NoBias));
  const std::string best_name(Scheme::name(Scheme::Kind::BestCA));
  for (const ResultRow& r : rows) {
    const Key key{r.param, r.value, r.engine};
    if (r.scheme == nobias_name) nobias[key] = &r;
    if (r.scheme == best_name) best[key] = &r;
  }

  std::vector<std::string> warnings;
  std::map<Key, bool> warned;
  for (ResultRow& r : rows) {
    const Key key{r.param, r.value, r.engine};
    const auto nb = nobias.find(key);
    const auto bs = best.find(key);
    if (bs != best.end()) r.outage_loss_ratio = outage_loss(r.metrics, bs->second->metrics);
    if (nb != nobias.end() && bs != best.end()) r.gain_rho_pct = gain_rho(r.metrics, nb->second->metrics, bs->second->metrics);
    if ((nb == nobias.end() || bs == best.end()) && !warned[key]) {
      warned[key] = true;
      std::string missing = nb == nobias.end() ? nobias_name : "";
      if (bs == best.end()) missing += (missing.empty() ? "" : " and ") + best_name;
      warnings.push_back("no " + missing + " row for " + r.param + "=" + format_double(r.value) + " (" + r.engine +
                         "); derived columns left empty");
    }
  }
  return warnings;
}

std::string format_row(const ResultRow& r) {
  const MetricsReport& m = r.metrics;
  std::string s;
  s += r.param;
  s += ',' + format_double(r.value);
  s += ',' + r.scheme;
  s += ',' + r.engine;
  s += ',' + cell(m.outage_prob);
  s += ',' + (r.has_ci && m.outage_prob ? format_double(m.outage_ci) : std::string());
  s += ',' + format_double(m.grid_power_total_mw);
  s += ',' + (r.has_ci ? format_double(m.grid_power_ci) : std::string());
  s += ',' + cell(r.gain_rho_pct);
  s += ',' + cell(r.outage_loss_ratio);
  s += ',' + cell(r.runtime_s);
  s += ',' + std::to_string(r.seed);
  return s;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows, std::span<const std::string> warnings) {
  const auto& columns = csv_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const ResultRow& r : rows) out << format_row(r) << '\n';
  for (const std::string& w : warnings) out << "# warning: " << w << '\n';
}

}  // namespace greenassoc::cli
