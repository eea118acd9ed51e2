#include "basins/labeling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace basins {

namespace {

// Stream tag separating the split permutation from per-sample streams.
constexpr std::uint64_t kSplitStream = 0x73706c6974ULL;

}  // namespace

void SamplingDomain::validate() const {
  if (!is_finite(lower) || !is_finite(upper) || !(lower.x < upper.x) || !(lower.y < upper.y) ||
      !(lower.z < upper.z)) {
    throw std::invalid_argument("sampling domain needs finite lower < upper on every axis");
  }
}

bool SamplingDomain::contains(const State3& s) const {
  return s.x >= lower.x && s.x <= upper.x && s.y >= lower.y && s.y <= upper.y &&
         s.z >= lower.z && s.z <= upper.z;
}

State3 SamplingDomain::sample(Rng& rng) const {
  const double x = rng.uniform(lower.x, upper.x);
  const double y = rng.uniform(lower.y, upper.y);
  const double z = rng.uniform(lower.z, upper.z);
  return {x, y, z};
}

AttractorLabel classify_final_state(const State3& final_state, const LorenzParams& p, double eps,
                                    bool converged) {
  if (!(eps > 0.0)) throw std::invalid_argument("classification radius must be positive");
  const auto [c_plus, c_minus] = fixed_points(p);
  if (!converged) return AttractorLabel::Undecided;
  if (distance(final_state, c_plus) < eps) return AttractorLabel::CPlus;
  if (distance(final_state, c_minus) < eps) return AttractorLabel::CMinus;
  return AttractorLabel::Undecided;
}

LabelOutcome label_initial_condition(const LorenzParams& p, const State3& ic,
                                     const IntegratorConfig& cfg, double eps) {
  const IntegrationResult run = integrate_to_rest(p, ic, cfg);
  LabelOutcome out;
  out.status = run.status;
  out.sample.ic = ic;
  out.sample.settle_time = run.elapsed;
  out.sample.label = classify_final_state(run.final_state, p, eps, run.converged());
  return out;
}

Dataset generate_dataset(const LorenzParams& p, std::size_t n, const SamplingDomain& domain,
                         const IntegratorConfig& cfg, std::uint64_t seed, unsigned workers) {
  if (n == 0) throw std::invalid_argument("dataset size must be at least 1");
  p.validate_bistable();
  cfg.validate();
  domain.validate();

  std::vector<LabelOutcome> outcomes(n);
  parallel_for(n, workers, [&](std::size_t i) {
    Rng rng = Rng::substream(seed, i);
    outcomes[i] = label_initial_condition(p, domain.sample(rng), cfg);
  });

  Dataset out;
  out.requested = n;
  out.samples.reserve(n);
  std::size_t undecided = 0;
  for (const auto& o : outcomes) {
    if (o.sample.label == AttractorLabel::Undecided) {
      ++undecided;
      if (o.status == IntegrationStatus::StepUnderflow || o.status == IntegrationStatus::NonFinite) {
        ++out.failures;
      }
    } else {
      out.samples.push_back(o.sample);
    }
  }
  out.undecided_fraction = static_cast<double>(undecided) / static_cast<double>(n);
  return out;
}

std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> train_test_split_count(
    std::span<const LabeledSample> data, std::size_t n_train, std::uint64_t seed) {
  if (data.empty()) throw std::invalid_argument("cannot split an empty dataset");
  if (n_train > data.size()) throw std::invalid_argument("train count exceeds dataset size");

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, kSplitStream));
  shuffle(order.begin(), order.end(), rng);

  std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> out;
  out.first.reserve(n_train);
  out.second.reserve(data.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? out.first : out.second).push_back(data[order[i]]);
  }
  return out;
}

std::pair<std::vector<LabeledSample>, std::vector<LabeledSample>> train_test_split(
    std::span<const LabeledSample> data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
  }
  if (data.empty()) throw std::invalid_argument("cannot split an empty dataset");
  const auto n_train =
      static_cast<std::size_t>(std::floor(static_cast<double>(data.size()) * train_fraction));
  return train_test_split_count(data, n_train, seed);
}

}  // namespace basins
