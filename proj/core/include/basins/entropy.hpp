#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "basins/dynsys.hpp"
#include "basins/labeling.hpp"

namespace basins {

enum class LogBase { Natural, Two };

std::string_view to_string(LogBase b);
LogBase log_base_from_string(std::string_view s);

struct EntropyConfig {
  std::size_t n_boxes = 25;
  std::size_t trajs_per_box = 25;
  double box_side = 4.0;
  SamplingDomain domain;
  LogBase log_base = LogBase::Natural;
  std::uint64_t seed = 0;

  void validate() const;
};

struct BoxCounts {
  std::size_t c_minus = 0;
  std::size_t c_plus = 0;
  std::size_t undecided = 0;

  std::size_t decided() const { return c_minus + c_plus; }
};

struct BoxResult {
  State3 center;
  BoxCounts counts;
  double entropy = 0.0;
  /// Fewer than two decided orbits; the box contributes zero.
  bool flagged = false;
};

struct EntropyResult {
  double basin_entropy = 0.0;
  std::vector<BoxResult> boxes;
  std::size_t flagged_boxes = 0;
};

/// Gibbs entropy sum_j p_j log(1/p_j) of the decided counts, with 0 log(1/0) = 0.
/// Throws std::invalid_argument when no orbit in the box was decided.
double box_entropy(const BoxCounts& counts, LogBase base = LogBase::Natural);

/// Any attractor-assigning function of an initial condition.
using Labeler = std::function<AttractorLabel(const State3&)>;

/// Box-averaged entropy S_b = sum_i S_i / n_boxes. Box i draws its center
/// and its orbits from the substream (seed, i); centers are uniform over the
/// part of the domain where a whole box fits.
EntropyResult basin_entropy(const EntropyConfig& cfg, const Labeler& label,
                            unsigned workers = kAutoWorkers);

/// Lorenz specialization, labeling each orbit by direct integration.
EntropyResult basin_entropy(const LorenzParams& p, const EntropyConfig& cfg,
                            const IntegratorConfig& integ, unsigned workers = kAutoWorkers);

/// Box table as CSV: box_index,cx,cy,cz,n0,n1,n_undecided,entropy.
std::string boxes_to_csv(const std::vector<BoxResult>& boxes);

}  // namespace basins
