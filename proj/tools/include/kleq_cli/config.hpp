#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kleq/attacks.hpp"

namespace kleq::cli {

/// Bad command line or config file; the message is shown to the user and the
/// process exits with status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One experiment as given on the command line or in a JSON config file.
/// Keys in the file use the flag names with '-' replaced by '_'.
struct ExperimentConfig {
  std::string attack;
  unsigned kappa = 8;
  unsigned n = 8;
  std::optional<std::string> scheme;
  std::optional<std::string> middle;
  bool share_ciphers = false;
  std::optional<std::uint64_t> cipher_id;
  std::vector<std::uint64_t> r;  // sweeps may list several values
  std::optional<unsigned> t;
  std::string backend = "idealized";
  std::optional<std::string> model;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool timing = false;
};

/// Overwrites the fields present in `j`; unknown keys are a UsageError.
void merge_json(ExperimentConfig& cfg, const nlohmann::json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Comma-separated list of every attack id.
std::string attack_id_list();

/// Resolves names to enums and checks the combination; throws UsageError.
RunConfig to_run_config(const ExperimentConfig& cfg, std::optional<std::uint64_t> r, std::uint64_t seed);

}  // namespace kleq::cli
