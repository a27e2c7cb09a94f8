#pragma once

// Scenario configuration files.  TOML is read through a small subset parser
// (tables, dotted table names, key = value with strings, integers, floats,
// booleans and single-line arrays); files ending in .json are read as-is.
// Both produce the same JSON document.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace dhs::config {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

nlohmann::json parse_toml(std::string_view text);
nlohmann::json load(const std::filesystem::path& path);

/// Value at a dotted key such as "grid.n"; throws ConfigError when absent.
const nlohmann::json& require(const nlohmann::json& doc, const std::string& dotted);
bool has(const nlohmann::json& doc, const std::string& dotted);

double require_real(const nlohmann::json& doc, const std::string& dotted);
long long require_integer(const nlohmann::json& doc, const std::string& dotted);
std::string require_string(const nlohmann::json& doc, const std::string& dotted);

}  // namespace dhs::config
