// Checks that need a fully trained classifier. Each case trains with the
// default pipeline, so this target takes tens of seconds.

#include <unistd.h>

#include <filesystem>
#include <map>
#include <regex>
#include <sstream>

#include "basins/boundary.hpp"
#include "basins/csv.hpp"
#include "basins/sweep.hpp"
#include "cli/commands.hpp"
#include "doctest.h"

using namespace basins;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240607;

const mlp::NetworkParams& trained_model(double r) {
  static std::map<double, mlp::NetworkParams> cache;
  if (auto it = cache.find(r); it != cache.end()) return it->second;
  SweepConfig cfg;
  cfg.master_seed = kSeed;
  auto step = run_sweep_step(r, cfg);
  REQUIRE(step.row.ok);
  MESSAGE("r=" << r << " held-out accuracy " << step.row.accuracy);
  return cache.emplace(r, *step.model).first->second;
}

}  // namespace

TEST_CASE("r = 12 slice agrees with direct integration") {
  const auto& net = trained_model(12.0);
  GridSpec2D spec;
  spec.nx = spec.ny = 50;
  const auto field = evaluate_slice(net, spec);
  const auto truth = ground_truth_slice(LorenzParams{10.0, 12.0, 8.0 / 3.0}, spec, IntegratorConfig{});
  const auto acc = grid_accuracy(field.classes, truth);
  MESSAGE("50x50 slice accuracy " << acc.accuracy << " over " << acc.compared << " cells");
  CHECK(acc.accuracy >= 0.95);
}

TEST_CASE("reconstruct --truth prints the grid accuracy") {
  const auto& net = trained_model(12.0);
  const fs::path dir = fs::temp_directory_path() / ("basins_trained_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string model = (dir / "model.json").string();
  mlp::ModelProvenance prov;
  prov.r = 12.0;
  csv::write_file(model, mlp::model_to_json(net, prov));

  std::ostringstream out, err;
  const int code = cli::run_cli({"--out-dir", dir.string(), "reconstruct", "--model", model, "--mode", "slice",
                                 "--nx", "100", "--ny", "100", "--truth"},
                                out, err);
  REQUIRE(code == 0);
  std::smatch m;
  const std::string text = out.str();
  REQUIRE(std::regex_search(text, m, std::regex("grid_accuracy ([0-9.eE+-]+)")));
  MESSAGE(text);
  CHECK(std::stod(m[1].str()) >= 0.95);
  fs::remove_all(dir);
}

TEST_CASE("r = 20 sphere shows three probability bands") {
  const auto& net = trained_model(20.0);
  const auto spec = default_sphere(LorenzParams{10.0, 20.0, 8.0 / 3.0});
  const auto field = evaluate_sphere(net, spec);
  std::size_t low = 0, mid = 0, high = 0;
  for (double p : field.probs) {
    if (p < 0.25) {
      ++low;
    } else if (p > 0.75) {
      ++high;
    } else {
      ++mid;
    }
  }
  MESSAGE("bands <0.25: " << low << ", 0.25-0.75: " << mid << ", >0.75: " << high);
  CHECK(low > 0);
  CHECK(mid > 0);
  CHECK(high > 0);
  // The confident bands dominate; the uncertain band is the interface.
  CHECK(mid < low + high);
}
