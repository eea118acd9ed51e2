#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "basins/boundary.hpp"
#include "basins/entropy.hpp"
#include "basins/labeling.hpp"
#include "basins/mlp.hpp"

namespace basins::cli {

/// Bad flags, a bad config file or a violated precondition. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a subcommand may read. Defaults, then the --config file, then
/// flags; the result is what gets echoed next to the outputs.
struct RunConfig {
  LorenzParams params;
  IntegratorConfig integrator;
  SamplingDomain domain;
  std::size_t dataset_size = 20000;
  double test_fraction = 0.2;
  mlp::NetworkArch arch;
  mlp::TrainConfig train;
  EntropyConfig entropy;
  GridSpec2D slice;
  SphereSpec sphere;
  /// Unset means "midway between the two fixed points", resolved per r.
  std::optional<State3> sphere_center;
  LatticeSpec3D volume;
  Range band{0.4, 0.6};
  std::vector<double> r_values{4, 6, 8, 10, 12, 14, 16, 18, 20, 22};
  std::uint64_t seed = 0;
  unsigned workers = kAutoWorkers;
  std::filesystem::path out_dir = ".";
  std::string data_path;
  std::string model_path;
  /// True when the architecture came from the config file or a flag rather than defaults.
  bool arch_explicit = false;
};

/// Overlays `j` onto `cfg`. Unknown top-level keys are rejected so typos do
/// not silently fall back to defaults.
void apply_json(const nlohmann::json& j, RunConfig& cfg);
RunConfig load_config_file(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace basins::cli
