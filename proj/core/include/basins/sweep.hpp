#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "basins/entropy.hpp"
#include "basins/fit.hpp"
#include "basins/labeling.hpp"
#include "basins/mlp.hpp"

namespace basins {

struct SweepConfig {
  std::vector<double> r_values{4, 6, 8, 10, 12, 14, 16, 18, 20, 22};
  LorenzParams base_params;  ///< sigma and beta; r is overwritten per step
  std::size_t dataset_size = 20000;
  double train_fraction = 0.8;
  SamplingDomain domain;
  IntegratorConfig integrator;
  mlp::NetworkArch arch;
  mlp::TrainConfig train;  ///< seed field is replaced by a master-seed derivative
  EntropyConfig entropy;   ///< likewise
  std::uint64_t master_seed = 0;
  unsigned workers = kAutoWorkers;
};

struct SweepRow {
  double r = 0.0;
  double accuracy = 0.0;
  double basin_entropy = 0.0;
  double undecided_fraction = 0.0;
  bool ok = true;
  std::string failure;  ///< set when ok == false
};

/// Seeds used by one sweep step. They depend on the master seed only, so
/// every r sees the same initial-condition draws, split, initialization and
/// entropy boxes.
struct StepSeeds {
  std::uint64_t dataset;
  std::uint64_t split;
  std::uint64_t train;
  std::uint64_t entropy;
};
StepSeeds step_seeds(std::uint64_t master_seed);

/// Everything one r produces; the row plus the artifacts behind it.
struct SweepStep {
  SweepRow row;
  std::optional<mlp::NetworkParams> model;
  mlp::TrainReport report;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  EntropyResult entropy;
};

/// Dataset -> split -> train -> test accuracy, plus basin entropy. Failures
/// are captured in the row rather than thrown.
SweepStep run_sweep_step(double r, const SweepConfig& cfg);

/// One row per r in ascending order.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

struct TwoRegionFits {
  FitResult low;
  FitResult high;
  std::size_t low_count = 0;
  std::size_t high_count = 0;
};

/// Linear fits of accuracy on basin entropy for rows with r <= low_max and
/// rows with r >= high_min; rows strictly between are dropped. Throws
/// std::invalid_argument if a region has fewer than 3 rows.
TwoRegionFits two_region_fits(const std::vector<SweepRow>& rows, double low_max = 13.5,
                              double high_min = 14.0);

/// r,accuracy,basin_entropy,undecided_fraction; failed rows carry nan.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace basins
