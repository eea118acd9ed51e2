#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "basins/dynsys.hpp"
#include "basins/parallel.hpp"
#include "basins/rng.hpp"
#include "basins/state.hpp"

namespace basins {

/// Terminal attractor. The integer encoding matches the dataset files.
enum class AttractorLabel : int { CMinus = 0, CPlus = 1, Undecided = -1 };

inline int encode(AttractorLabel l) { return static_cast<int>(l); }
inline AttractorLabel flipped(AttractorLabel l) {
  switch (l) {
    case AttractorLabel::CMinus: return AttractorLabel::CPlus;
    case AttractorLabel::CPlus: return AttractorLabel::CMinus;
    default: return AttractorLabel::Undecided;
  }
}

/// Axis-aligned box of initial conditions.
struct SamplingDomain {
  State3 lower{-50.0, -50.0, -50.0};
  State3 upper{50.0, 50.0, 50.0};

  void validate() const;
  bool contains(const State3& s) const;
  State3 sample(Rng& rng) const;
};

/// Radius within which a final state counts as sitting on C+ or C-.
inline constexpr double kDefaultClassifyEps = 1e-2;

struct LabeledSample {
  State3 ic;
  AttractorLabel label = AttractorLabel::Undecided;
  double settle_time = 0.0;
};

AttractorLabel classify_final_state(const State3& final_state, const LorenzParams& p, double eps,
                                    bool converged);

/// Integration failures (step underflow, blow-up) are not thrown; they come
/// back as Undecided with `status` recording the cause.
struct LabelOutcome {
  LabeledSample sample;
  IntegrationStatus status = IntegrationStatus::TimeLimit;
};

LabelOutcome label_initial_condition(const LorenzParams& p, const State3& ic,
                                     const IntegratorConfig& cfg,
                                     double eps = kDefaultClassifyEps);

struct Dataset {
  std::vector<LabeledSample> samples;  ///< decided samples only, in draw order
  double undecided_fraction = 0.0;
  std::size_t requested = 0;
  std::size_t failures = 0;            ///< subset of undecided caused by integrator failure
};

/// Draws `n` initial conditions uniformly over `domain`; sample i uses the
/// substream (seed, i), so the result does not depend on `workers`.
Dataset generate_dataset(const LorenzParams& p, std::size_t n, const SamplingDomain& domain,
                         const IntegratorConfig& cfg, std::uint64_t seed,
                         unsigned workers = kAutoWorkers);

/// Seeded permutation; the first floor(n * train_fraction) go to train.
std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> train_test_split(
    std::span<const LabeledSample> data, double train_fraction, std::uint64_t seed);

/// Same permutation as train_test_split, with an explicit train count.
std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> train_test_split_count(
    std::span<const LabeledSample> data, std::size_t n_train, std::uint64_t seed);

// Dataset files ------------------------------------------------------------

inline constexpr const char* kDatasetFormatVersion = "basins-dataset/1";

struct DatasetMetadata {
  LorenzParams params;
  SamplingDomain domain;
  IntegratorConfig integrator;
  std::uint64_t seed = 0;
  std::size_t requested = 0;
  std::size_t failures = 0;
  double undecided_fraction = 0.0;
};

/// CSV with header x0,y0,z0,label,settle_time and 17 significant digits.
std::string dataset_to_csv(std::span<const LabeledSample> samples);
void write_dataset_csv(const std::string& path, std::span<const LabeledSample> samples);
/// Throws std::runtime_error citing the offending line number on malformed input.
std::vector<LabeledSample> read_dataset_csv(const std::string& path);
std::vector<LabeledSample> parse_dataset_csv(const std::string& text);

std::string metadata_to_json(const DatasetMetadata& meta);
DatasetMetadata metadata_from_json(const std::string& text);

}  // namespace basins
