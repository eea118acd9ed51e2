#include <algorithm>
#include <set>
#include <stdexcept>

#include "basins/labeling.hpp"
#include "basins/rng.hpp"
#include "doctest.h"
#include "reference_rk4.hpp"

using namespace basins;

namespace {

LorenzParams at_r(double r) {
  LorenzParams p;
  p.r = r;
  return p;
}

AttractorLabel label_with_tol(const LorenzParams& p, const State3& ic, double tol) {
  IntegratorConfig cfg;
  cfg.abs_tol = tol;
  cfg.rel_tol = tol;
  return label_initial_condition(p, ic, cfg).sample.label;
}

/// Some axis perturbation of size delta lands in the other basin.
bool near_boundary(const LorenzParams& p, const State3& ic, double delta, double tol) {
  const AttractorLabel base = label_with_tol(p, ic, tol);
  for (const State3 d : {State3{delta, 0, 0}, State3{0, delta, 0}, State3{0, 0, delta}}) {
    for (const State3& probe : {ic + d, ic - d}) {
      const AttractorLabel l = label_with_tol(p, probe, tol);
      if (l != base && l != AttractorLabel::Undecided) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("classify_final_state") {
  const auto p = at_r(12.0);
  const auto [cp, cm] = fixed_points(p);
  CHECK(classify_final_state(cp, p, 1e-2, true) == AttractorLabel::CPlus);
  CHECK(classify_final_state({0, 0, 0}, p, 1e-2, true) == AttractorLabel::Undecided);
  CHECK(classify_final_state(cm + State3{1e-3, 0, 0}, p, 1e-2, true) == AttractorLabel::CMinus);
  CHECK(classify_final_state(cp, p, 1e-2, false) == AttractorLabel::Undecided);
  CHECK_THROWS_AS(classify_final_state(cp, at_r(1.0), 1e-2, true), std::invalid_argument);
  CHECK_THROWS_AS(classify_final_state(cp, p, 0.0, true), std::invalid_argument);
}

TEST_CASE("label_initial_condition") {
  const auto p = at_r(12.0);
  const auto [cp, cm] = fixed_points(p);
  const auto at_fixed = label_initial_condition(p, cp, {});
  CHECK(at_fixed.sample.label == AttractorLabel::CPlus);
  CHECK(at_fixed.sample.settle_time == 0.0);

  const auto out = label_initial_condition(p, {1, 1, 20}, {});
  const auto ref = oracle::rk4_label({10.0, 12.0, 8.0 / 3.0}, {1, 1, 20});
  REQUIRE(ref.has_value());
  CHECK(encode(out.sample.label) == *ref);
  CHECK(out.sample.settle_time > 0.0);

  const auto mirror = label_initial_condition(p, symmetry_image({1, 1, 20}), {});
  CHECK(mirror.sample.label == flipped(out.sample.label));
}

TEST_CASE("labels agree with the RK4 reference on 200 seeded initial conditions") {
  const auto p = at_r(12.0);
  const SamplingDomain domain;
  const oracle::Lorenz ref_field{10.0, 12.0, 8.0 / 3.0};
  int decided = 0, agree = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng = Rng::substream(99, i);
    const State3 ic = domain.sample(rng);
    const auto ours = label_initial_condition(p, ic, {}).sample.label;
    const auto ref = oracle::rk4_label(ref_field, {ic.x, ic.y, ic.z});
    if (ours == AttractorLabel::Undecided || !ref) continue;
    ++decided;
    if (encode(ours) == *ref) ++agree;
  }
  MESSAGE("agreement " << agree << "/" << decided);
  CHECK(decided >= 198);
  CHECK(agree >= 0.99 * decided);
}

TEST_CASE("symmetric initial conditions land on opposite attractors") {
  const SamplingDomain domain;
  for (double r : {12.0, 20.0}) {
    const auto p = at_r(r);
    int pairs = 0, opposite = 0, unexplained = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      Rng rng = Rng::substream(2024, i);
      const State3 ic = domain.sample(rng);
      const auto a = label_initial_condition(p, ic, {}).sample.label;
      const auto b = label_initial_condition(p, symmetry_image(ic), {}).sample.label;
      if (a == AttractorLabel::Undecided || b == AttractorLabel::Undecided) continue;
      ++pairs;
      if (b == flipped(a)) {
        ++opposite;
        continue;
      }
      // A disagreement must be a tolerance artifact: tightening it has to
      // change at least one member of the pair.
      const auto a9 = label_with_tol(p, ic, 1e-9);
      const auto b9 = label_with_tol(p, symmetry_image(ic), 1e-9);
      if (a9 == a && b9 == b) ++unexplained;
    }
    MESSAGE("r = " << r << ": opposite " << opposite << "/" << pairs);
    CHECK(pairs >= 1990);
    CHECK(opposite >= 0.99 * pairs);
    CHECK(unexplained == 0);
  }
}

TEST_CASE("tightening tolerances keeps labels away from the boundary") {
  const SamplingDomain domain;
  for (double r : {8.0, 12.0, 16.0}) {
    const auto p = at_r(r);
    int changed = 0, changed_interior = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      Rng rng = Rng::substream(555, i);
      const State3 ic = domain.sample(rng);
      const auto loose = label_with_tol(p, ic, 1e-6);
      const auto tight = label_with_tol(p, ic, 1e-9);
      if (loose == AttractorLabel::Undecided || tight == AttractorLabel::Undecided) continue;
      if (loose == tight) continue;
      ++changed;
      if (!near_boundary(p, ic, 1e-2, 1e-9)) ++changed_interior;
    }
    MESSAGE("r = " << r << ": label changes " << changed);
    CHECK(changed_interior == 0);
  }
}

TEST_CASE("generate_dataset") {
  const auto p = at_r(12.0);
  const SamplingDomain domain;

  SUBCASE("smallest case") {
    const auto d = generate_dataset(p, 1, domain, {}, 5, 1);
    CHECK(d.samples.size() <= 1);
    CHECK(d.requested == 1);
  }

  SUBCASE("deterministic across runs and worker counts") {
    const auto a = generate_dataset(p, 1000, domain, {}, 7, 1);
    const auto b = generate_dataset(p, 1000, domain, {}, 7, 1);
    const auto c = generate_dataset(p, 1000, domain, {}, 7, 4);
    CHECK(dataset_to_csv(a.samples) == dataset_to_csv(b.samples));
    CHECK(dataset_to_csv(a.samples) == dataset_to_csv(c.samples));
    CHECK(a.undecided_fraction == c.undecided_fraction);
    const auto other = generate_dataset(p, 1000, domain, {}, 8, 1);
    CHECK(dataset_to_csv(a.samples) != dataset_to_csv(other.samples));
    for (const auto& s : a.samples) {
      CHECK(domain.contains(s.ic));
      CHECK(s.label != AttractorLabel::Undecided);
    }
  }

  SUBCASE("both classes present with near-equal shares") {
    const auto d = generate_dataset(p, 10000, domain, {}, 13);
    const auto ones = std::count_if(d.samples.begin(), d.samples.end(),
                                    [](const auto& s) { return s.label == AttractorLabel::CPlus; });
    const double share = static_cast<double>(ones) / static_cast<double>(d.samples.size());
    CHECK(share > 0.3);
    CHECK(share < 0.7);
  }

  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(generate_dataset(p, 0, domain, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset(at_r(0.5), 10, domain, {}, 1), std::invalid_argument);
    SamplingDomain flat;
    flat.upper.z = flat.lower.z;
    CHECK_THROWS_AS(generate_dataset(p, 10, flat, {}, 1), std::invalid_argument);
  }
}

TEST_CASE("undecided fraction stays small") {
  const SamplingDomain domain;
  for (double r : {4.0, 8.0, 12.0, 16.0}) {
    const auto d = generate_dataset(at_r(r), 2000, domain, {}, 17);
    CHECK_MESSAGE(d.undecided_fraction < 0.01, "r = " << r);
  }
  for (double r : {20.0, 22.0}) {
    const auto d = generate_dataset(at_r(r), 2000, domain, {}, 17);
    MESSAGE("r = " << r << " undecided fraction " << d.undecided_fraction);
  }
}

TEST_CASE("integrator failures become undecided without aborting the batch") {
  IntegratorConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-300;
  cfg.min_step = 1e-4;
  const auto d = generate_dataset(at_r(12.0), 20, SamplingDomain{}, cfg, 3, 1);
  CHECK(d.samples.empty());
  CHECK(d.undecided_fraction == 1.0);
  CHECK(d.failures == 20);
}

TEST_CASE("train_test_split") {
  std::vector<LabeledSample> data(100);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i].ic = {static_cast<double>(i), 0, 0};
    data[i].label = i % 2 ? AttractorLabel::CPlus : AttractorLabel::CMinus;
  }
  const auto [train, test] = train_test_split(data, 0.8, 1);
  CHECK(train.size() == 80);
  CHECK(test.size() == 20);
  std::set<double> seen;
  for (const auto& s : train) seen.insert(s.ic.x);
  for (const auto& s : test) seen.insert(s.ic.x);
  CHECK(seen.size() == 100);

  const auto [train2, test2] = train_test_split(data, 0.8, 1);
  CHECK(dataset_to_csv(train) == dataset_to_csv(train2));
  CHECK(dataset_to_csv(test) == dataset_to_csv(test2));

  const std::span<const LabeledSample> five(data.data(), 5);
  const auto [t5, s5] = train_test_split(five, 0.8, 1);
  CHECK(t5.size() == 4);
  CHECK(s5.size() == 1);

  CHECK_THROWS_AS(train_test_split({}, 0.8, 1), std::invalid_argument);
  CHECK_THROWS_AS(train_test_split(data, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(train_test_split(data, 0.0, 1), std::invalid_argument);
}

TEST_CASE("dataset CSV and metadata") {
  const auto d = generate_dataset(at_r(12.0), 50, SamplingDomain{}, {}, 21, 1);
  const std::string text = dataset_to_csv(d.samples);
  CHECK(text.rfind("x0,y0,z0,label,settle_time\n", 0) == 0);
  const auto parsed = parse_dataset_csv(text);
  REQUIRE(parsed.size() == d.samples.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].ic == d.samples[i].ic);
    CHECK(parsed[i].label == d.samples[i].label);
    CHECK(parsed[i].settle_time == d.samples[i].settle_time);
  }

  SUBCASE("parse errors cite the line") {
    const std::string bad = "x0,y0,z0,label,settle_time\n1,2,3,1,0.5\n1,2,oops,0,1\n";
    try {
      parse_dataset_csv(bad);
      FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dataset_csv("a,b\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dataset_csv("x0,y0,z0,label,settle_time\n1,2,3,2,0\n"),
                    std::runtime_error);
  }

  SUBCASE("metadata round trip") {
    DatasetMetadata meta;
    meta.params = at_r(16.0);
    meta.seed = 12345678901234ULL;
    meta.requested = 50;
    meta.undecided_fraction = d.undecided_fraction;
    const auto back = metadata_from_json(metadata_to_json(meta));
    CHECK(back.params.r == 16.0);
    CHECK(back.seed == meta.seed);
    CHECK(back.integrator.abs_tol == 1e-6);
    CHECK(metadata_to_json(back) == metadata_to_json(meta));
  }
}
