#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seccell/sim_engine.hpp"

namespace seccell {

/// Invalid configuration; `key()` is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  ScenarioTemplate scenario;
  SimConfig sim;
  Algorithm algorithm = Algorithm::Dpp;
  std::size_t slots = 150;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::optional<SweepSpec> sweep;
  std::size_t reps = 1;
};

/// Parses a JSON document. Unknown keys and wrongly typed values raise
/// ConfigError; missing keys keep their defaults.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config_file(const std::filesystem::path& path);

/// "AXIS=v1,v2,..." as given on the command line.
SweepSpec parse_sweep_arg(std::string_view arg);

/// Runs the scenario-level validation and maps failures to ConfigError.
void validate_config(const RunConfig& cfg);

}  // namespace seccell
