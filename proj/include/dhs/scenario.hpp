#pragma once

// Scenario runner behind the command line tool.
//
// Exit codes: 0 success, 2 numerical sentinel (blow-up, non-contraction,
// loss of flow monotonicity), 1 usage error.  Every run that owns an output
// directory leaves manifest.json there, including failed ones.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace dhs {

enum class ScenarioKind { simulate, conserve, picard, linearized, difference, envelope, flow, audit };

ScenarioKind parse_scenario_kind(const std::string& name);
std::string to_string(ScenarioKind kind);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSentinel = 2;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  ScenarioKind kind;
  nlohmann::json config;
  std::filesystem::path outdir;
  std::uint64_t seed = 0;
  bool overwrite = false;
  int workers = 1;
};

/// Prepares the output directory, runs the experiment and writes the
/// manifest.  Messages for usage errors go to standard error.
int run(const Scenario& scenario);

}  // namespace dhs
