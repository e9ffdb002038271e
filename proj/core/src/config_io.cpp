#include "greenassoc/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace greenassoc {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not a number: '" + text + "'");
  return value;
}

template <typename Int>
Int parse_integer(const std::string& text) {
  Int value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::invalid_argument("not an integer: '" + text + "'");
  return value;
}

using Setter = std::function<void(NetworkConfig&, const std::string&)>;
using Getter = std::function<std::string(const NetworkConfig&)>;

struct Field {
  Setter set;
  Getter get;
};

Field real_field(double NetworkConfig::*member) {
  return {[member](NetworkConfig& c, const std::string& v) { c.*member = parse_real(v); },
          [member](const NetworkConfig& c) { return format_double(c.*member); }};
}

Field int_field(int NetworkConfig::*member) {
  return {[member](NetworkConfig& c, const std::string& v) { c.*member = parse_integer<int>(v); },
          [member](const NetworkConfig& c) { return std::to_string(c.*member); }};
}

Field battery_field(BatterySpec NetworkConfig::*spec, bool capacity) {
  if (capacity) {
    return {[spec](NetworkConfig& c, const std::string& v) { (c.*spec).capacity_units = parse_integer<int>(v); },
            [spec](const NetworkConfig& c) { return std::to_string((c.*spec).capacity_units); }};
  }
  return {[spec](NetworkConfig& c, const std::string& v) { (c.*spec).unit_mw = parse_real(v); },
          [spec](const NetworkConfig& c) { return format_double((c.*spec).unit_mw); }};
}

Field harvest_field(HarvestSpec NetworkConfig::*spec, bool burst) {
  if (burst) {
    return {[spec](NetworkConfig& c, const std::string& v) { (c.*spec).burst_units = parse_integer<int>(v); },
            [spec](const NetworkConfig& c) { return std::to_string((c.*spec).burst_units); }};
  }
  return {[spec](NetworkConfig& c, const std::string& v) { (c.*spec).mean_units_per_slot = parse_real(v); },
          [spec](const NetworkConfig& c) { return format_double((c.*spec).mean_units_per_slot); }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"kappa", real_field(&NetworkConfig::kappa)},
      {"alpha", real_field(&NetworkConfig::alpha)},
      {"sigma_db", real_field(&NetworkConfig::sigma_db)},
      {"p_rx_dbm", real_field(&NetworkConfig::p_rx_dbm)},
      {"p_tx_max_mw", real_field(&NetworkConfig::p_tx_max_mw)},
      {"lambda_eh", real_field(&NetworkConfig::lambda_eh)},
      {"lambda_hy", real_field(&NetworkConfig::lambda_hy)},
      {"lambda_og", real_field(&NetworkConfig::lambda_og)},
      {"omega", real_field(&NetworkConfig::omega)},
      {"beta_a", real_field(&NetworkConfig::beta_a)},
      {"beta_g", real_field(&NetworkConfig::beta_g)},
      {"beta_eh", real_field(&NetworkConfig::beta_eh)},
      {"beta_hy", real_field(&NetworkConfig::beta_hy)},
      {"beta_og", real_field(&NetworkConfig::beta_og)},
      {"battery_eh.capacity_units", battery_field(&NetworkConfig::battery_eh, true)},
      {"battery_eh.unit_mw", battery_field(&NetworkConfig::battery_eh, false)},
      {"battery_hy.capacity_units", battery_field(&NetworkConfig::battery_hy, true)},
      {"battery_hy.unit_mw", battery_field(&NetworkConfig::battery_hy, false)},
      {"harvest_eh.mean_units_per_slot", harvest_field(&NetworkConfig::harvest_eh, false)},
      {"harvest_eh.burst_units", harvest_field(&NetworkConfig::harvest_eh, true)},
      {"harvest_hy.mean_units_per_slot", harvest_field(&NetworkConfig::harvest_hy, false)},
      {"harvest_hy.burst_units", harvest_field(&NetworkConfig::harvest_hy, true)},
      {"sim_area_m2", real_field(&NetworkConfig::sim_area_m2)},
      {"slots", int_field(&NetworkConfig::slots)},
      {"warmup_slots", int_field(&NetworkConfig::warmup_slots)},
      {"replications", int_field(&NetworkConfig::replications)},
      {"seed",
       {[](NetworkConfig& c, const std::string& v) { c.seed = parse_integer<std::uint64_t>(v); },
        [](const NetworkConfig& c) { return std::to_string(c.seed); }}},
      {"consumption_normalization",
       {[](NetworkConfig& c, const std::string& v) {
          if (v == "verbatim") {
            c.consumption_normalization = ConsumptionNormalization::Verbatim;
          } else if (v == "include_empty") {
            c.consumption_normalization = ConsumptionNormalization::IncludeEmpty;
          } else {
            throw std::invalid_argument("expected verbatim or include_empty, got '" + v + "'");
          }
        },
        [](const NetworkConfig& c) { return std::string(to_string(c.consumption_normalization)); }}},
  };
  return table;
}

const Field* find_field(const std::string& key) {
  for (const auto& [name, field] : fields())
    if (name == key) return &field;
  return nullptr;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [name, field] : fields()) keys.push_back(name);
  keys.insert(keys.end(), {"mean_spacing_r", "hybrid_fraction_c", "og_spacing_r"});
  return keys;
}

NetworkConfig parse_config(std::istream& in, const std::string& source_name) {
  NetworkConfig config = NetworkConfig::defaults();
  std::optional<double> spacing, fraction, og_spacing;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;

    const auto eq = body.find('=');
    const auto where = source_name + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");

    try {
      if (key == "mean_spacing_r") {
        spacing = parse_real(value);
      } else if (key == "hybrid_fraction_c") {
        fraction = parse_real(value);
      } else if (key == "og_spacing_r") {
        og_spacing = parse_real(value);
      } else if (const Field* field = find_field(key)) {
        field->set(config, value);
      } else {
        throw ConfigError(where + "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }

  try {
    if (spacing || fraction) {
      set_harvesting_layout(config, spacing.value_or(harvesting_spacing(config)),
                            fraction.value_or(hybrid_fraction(config)));
    }
    if (og_spacing) config.lambda_og = density_from_spacing(*og_spacing);
  } catch (const std::exception& e) {
    throw ConfigError(source_name + ": layout: " + e.what());
  }
  return config;
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

void write_config(std::ostream& out, const NetworkConfig& config) {
  for (const auto& [name, field] : fields()) out << name << " = " << field.get(config) << '\n';
}

}  // namespace greenassoc
