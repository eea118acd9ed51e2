#include <benchmark/benchmark.h>

#include <span>
#include <vector>

#include "basins/boundary.hpp"
#include "basins/dynsys.hpp"
#include "basins/labeling.hpp"
#include "basins/mlp.hpp"
#include "basins/rng.hpp"
#include "basins/tsit5.hpp"

using namespace basins;

namespace {

const LorenzParams kParams{10.0, 12.0, 8.0 / 3.0};

void BM_LorenzRhs(benchmark::State& state) {
  State3 s{1.0, 2.0, 3.0};
  for (auto _ : state) {
    s = lorenz_rhs(kParams, s) * 1e-9 + s;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LorenzRhs);

void BM_Tsit5Step(benchmark::State& state) {
  const auto f = [](const State3& s) { return lorenz_rhs(kParams, s); };
  State3 y{1.0, 1.0, 20.0};
  State3 k1 = f(y);
  for (auto _ : state) {
    auto step = tsit5::step(f, y, k1, 1e-3);
    benchmark::DoNotOptimize(step);
  }
}
BENCHMARK(BM_Tsit5Step);

void BM_IntegrateToRest(benchmark::State& state) {
  LorenzParams p = kParams;
  p.r = static_cast<double>(state.range(0));
  const IntegratorConfig cfg;
  Rng rng(1);
  const SamplingDomain domain;
  std::vector<State3> ics(64);
  for (auto& ic : ics) ic = domain.sample(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    auto res = integrate_to_rest(p, ics[i++ % ics.size()], cfg);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_IntegrateToRest)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_ForwardBatch(benchmark::State& state) {
  const auto net = mlp::init_params(mlp::NetworkArch{}, 3);
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  std::vector<State3> pts(n);
  for (auto& p : pts) p = {rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
  for (auto _ : state) {
    auto probs = mlp::forward_batch(net, pts);
    benchmark::DoNotOptimize(probs);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_ForwardBatch)->Arg(256)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_TrainEpoch(benchmark::State& state) {
  Rng rng(4);
  std::vector<LabeledSample> data(4096);
  for (auto& s : data) {
    s.ic = {rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
    s.label = s.ic.x + 0.3 * s.ic.y > 0 ? AttractorLabel::CPlus : AttractorLabel::CMinus;
  }
  mlp::TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) {
    auto res = mlp::train(std::span(data).first(3584), std::span(data).subspan(3584), mlp::NetworkArch{}, cfg);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_TrainEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
