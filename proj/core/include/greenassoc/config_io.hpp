#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "greenassoc/config.hpp"

namespace greenassoc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a flat `key = value` scenario file on top of NetworkConfig::defaults().
///
/// Blank lines and `#` comments are ignored. Keys are the NetworkConfig field
/// names; nested specs use a dot (`battery_eh.capacity_units`). Three layout
/// keys are also accepted and applied after every other key:
/// `mean_spacing_r` and `hybrid_fraction_c` set lambda_eh/lambda_hy, and
/// `og_spacing_r` sets lambda_og (`inf` removes on-grid BSs).
/// Unknown keys and malformed values throw ConfigError naming the line.
NetworkConfig parse_config(std::istream& in, const std::string& source_name = "<config>");
NetworkConfig load_config(const std::filesystem::path& path);

/// Writes every key in a form parse_config reads back to an equal config.
void write_config(std::ostream& out, const NetworkConfig& config);

std::vector<std::string> config_keys();

/// Locale-independent shortest round-trip rendering of a double.
std::string format_double(double value);

}  // namespace greenassoc
