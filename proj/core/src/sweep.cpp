#include "basins/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "basins/csv.hpp"
#include "basins/rng.hpp"

namespace basins {

StepSeeds step_seeds(std::uint64_t master_seed) {
  return {derive_seed(master_seed, 1), derive_seed(master_seed, 2), derive_seed(master_seed, 3),
          derive_seed(master_seed, 4)};
}

SweepStep run_sweep_step(double r, const SweepConfig& cfg) {
  SweepStep step;
  step.row.r = r;
  try {
    LorenzParams p = cfg.base_params;
    p.r = r;
    p.validate_bistable();
    const StepSeeds seeds = step_seeds(cfg.master_seed);

    const Dataset data =
        generate_dataset(p, cfg.dataset_size, cfg.domain, cfg.integrator, seeds.dataset, cfg.workers);
    step.row.undecided_fraction = data.undecided_fraction;
    auto [train_set, test_set] = train_test_split(data.samples, cfg.train_fraction, seeds.split);
    step.train_size = train_set.size();
    step.test_size = test_set.size();

    mlp::TrainConfig tcfg = cfg.train;
    tcfg.seed = seeds.train;
    auto trained = mlp::train(train_set, test_set, cfg.arch, tcfg);
    step.row.accuracy = trained.report.final_test_accuracy;
    step.report = std::move(trained.report);
    step.model = std::move(trained.params);

    EntropyConfig ecfg = cfg.entropy;
    ecfg.seed = seeds.entropy;
    step.entropy = basin_entropy(p, ecfg, cfg.integrator, cfg.workers);
    step.row.basin_entropy = step.entropy.basin_entropy;
  } catch (const std::exception& e) {
    step.row.ok = false;
    step.row.failure = e.what();
    step.row.accuracy = std::numeric_limits<double>::quiet_NaN();
    step.row.basin_entropy = std::numeric_limits<double>::quiet_NaN();
  }
  return step;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  if (cfg.r_values.empty()) throw std::invalid_argument("sweep needs at least one r value");
  if (!std::is_sorted(cfg.r_values.begin(), cfg.r_values.end())) {
    throw std::invalid_argument("sweep r values must be sorted ascending");
  }
  std::vector<SweepRow> rows;
  rows.reserve(cfg.r_values.size());
  for (double r : cfg.r_values) rows.push_back(run_sweep_step(r, cfg).row);
  return rows;
}

TwoRegionFits two_region_fits(const std::vector<SweepRow>& rows, double low_max, double high_min) {
  if (!(low_max < high_min)) throw std::invalid_argument("two-region split needs low_max < high_min");
  std::vector<double> lx, ly, hx, hy;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    if (row.r <= low_max) {
      lx.push_back(row.basin_entropy);
      ly.push_back(row.accuracy);
    } else if (row.r >= high_min) {
      hx.push_back(row.basin_entropy);
      hy.push_back(row.accuracy);
    }
  }
  if (lx.size() < 3) {
    throw std::invalid_argument("low-r region has " + std::to_string(lx.size()) +
                                " rows; at least 3 are required");
  }
  if (hx.size() < 3) {
    throw std::invalid_argument("high-r region has " + std::to_string(hx.size()) +
                                " rows; at least 3 are required");
  }
  TwoRegionFits out;
  out.low = fit_linear(lx, ly);
  out.high = fit_linear(hx, hy);
  out.low_count = lx.size();
  out.high_count = hx.size();
  return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "r,accuracy,basin_entropy,undecided_fraction\n";
  for (const auto& row : rows) {
    os << csv::format_double(row.r) << ',' << csv::format_double(row.accuracy) << ','
       << csv::format_double(row.basin_entropy) << ',' << csv::format_double(row.undecided_fraction)
       << '\n';
  }
  return os.str();
}

}  // namespace basins
