#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "basins/boundary.hpp"
#include "basins/csv.hpp"
#include "basins/json_io.hpp"
#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace basins;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("basins_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) { return csv::read_file(path); }

json read_json(const std::string& path) { return json::parse(slurp(path)); }

/// Small dataset plus a small model in `dir`, shared by several cases.
void make_model(const TempDir& dir) {
  REQUIRE(invoke({"--seed", "7", "--out-dir", dir.str(), "gen-data", "--r", "12", "--n", "600"}).code == 0);
  REQUIRE(invoke({"--seed", "7", "--out-dir", dir.str(), "train", "--data", dir.file("dataset.csv"),
               "--arch", "3,16,16,1", "--epochs", "30", "--batch-size", "64"})
              .code == 0);
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"gen-data", "--n", "abc"}).code == 2);
  CHECK(invoke({"reconstruct", "--mode", "cube", "--model", "x.json"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"gen-data", "--help"}).out.find("--r") != std::string::npos);
}

TEST_CASE("gen-data") {
  TempDir a("gen_a"), b("gen_b");

  SUBCASE("byte-identical reruns across worker counts") {
    const auto r1 = invoke({"--seed", "7", "--workers", "1", "--out-dir", a.str(), "gen-data", "--r", "12", "--n", "1000"});
    const auto r2 = invoke({"--seed", "7", "--workers", "3", "--out-dir", b.str(), "gen-data", "--r", "12", "--n", "1000"});
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    CHECK(r1.out.find("undecided_fraction") != std::string::npos);
    CHECK(slurp(a.file("dataset.csv")) == slurp(b.file("dataset.csv")));
    CHECK(slurp(a.file("dataset.json")) == slurp(b.file("dataset.json")));
    CHECK(read_dataset_csv(a.file("dataset.csv")).size() <= 1000);

    const auto r3 = invoke({"--seed", "8", "--out-dir", b.str(), "gen-data", "--r", "12", "--n", "1000"});
    REQUIRE(r3.code == 0);
    CHECK(slurp(a.file("dataset.csv")) != slurp(b.file("dataset.csv")));
  }

  SUBCASE("missing output directory") {
    const auto r = invoke({"--out-dir", a.file("does/not/exist"), "gen-data", "--n", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("does not exist") != std::string::npos);
  }

  SUBCASE("r outside the bistable range") {
    const auto r = invoke({"--out-dir", a.str(), "gen-data", "--r", "0.5", "--n", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("bistable") != std::string::npos);
    CHECK(invoke({"--out-dir", a.str(), "gen-data", "--r", "25", "--n", "10"}).code == 2);
  }

  SUBCASE("config echo round-trips") {
    REQUIRE(invoke({"--seed", "3", "--out-dir", a.str(), "gen-data", "--r", "9", "--n", "50"}).code == 0);
    const auto echoed = read_json(a.file("gen-data.config.json"));
    CHECK(echoed["params"]["r"] == 9.0);
    CHECK(echoed["dataset_size"] == 50);
    CHECK(echoed["seed"] == 3);

    // Re-running from the echo alone reproduces the outputs.
    const std::string first = slurp(a.file("dataset.csv"));
    fs::copy_file(a.file("gen-data.config.json"), b.file("echo.json"));
    REQUIRE(invoke({"--config", b.file("echo.json"), "--out-dir", b.str(), "gen-data"}).code == 0);
    CHECK(slurp(b.file("dataset.csv")) == first);
    auto second = read_json(b.file("gen-data.config.json"));
    second["out_dir"] = echoed["out_dir"];
    CHECK(second == echoed);
  }

  SUBCASE("bad config files") {
    csv::write_file(a.file("bad.json"), "{\"dataset_sise\": 10}");
    CHECK(invoke({"--config", a.file("bad.json"), "--out-dir", a.str(), "gen-data"}).code == 2);
    csv::write_file(a.file("bad.json"), "{not json");
    CHECK(invoke({"--config", a.file("bad.json"), "--out-dir", a.str(), "gen-data"}).code == 2);
    csv::write_file(a.file("bad.json"), "{\"dataset_size\": -4}");
    CHECK(invoke({"--config", a.file("bad.json"), "--out-dir", a.str(), "gen-data"}).code == 2);
    CHECK(invoke({"--config", a.file("missing.json"), "--out-dir", a.str(), "gen-data"}).code == 2);
  }
}

TEST_CASE("train") {
  TempDir dir("train");
  REQUIRE(invoke({"--seed", "5", "--out-dir", dir.str(), "gen-data", "--r", "12", "--n", "100"}).code == 0);

  SUBCASE("a test fraction that rounds to zero samples is rejected") {
    const auto r = invoke({"--out-dir", dir.str(), "train", "--data", dir.file("dataset.csv"), "--test-frac", "0.0001"});
    CHECK(r.code == 2);
    CHECK(r.err.find("empty test set") != std::string::npos);
  }

  SUBCASE("report round-trips and reruns are identical") {
    const std::vector<std::string> args{"--seed", "5", "--out-dir", dir.str(), "train", "--data",
                                        dir.file("dataset.csv"), "--arch", "3,8,1", "--epochs", "10"};
    const auto r = invoke(args);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("test_accuracy") != std::string::npos);
    const std::string model = slurp(dir.file("model.json"));
    const auto report_json = read_json(dir.file("train_report.json"));
    CHECK(report_json["test_size"] == 20);
    CHECK(report_json["train_size"] == 80);
    const auto report = report_json.get<mlp::TrainReport>();
    CHECK(report.loss_history.size() == 10);
    CHECK(json(report)["loss_history"] == report_json["loss_history"]);

    mlp::ModelProvenance prov;
    const auto net = mlp::model_from_json(model, &prov);
    CHECK(net.arch.layer_sizes == std::vector<int>{3, 8, 1});
    CHECK(prov.r == 12.0);

    REQUIRE(invoke({"--seed", "5", "--workers", "4", "--out-dir", dir.str(), "train", "--data",
                 dir.file("dataset.csv"), "--arch", "3,8,1", "--epochs", "10"})
                .code == 0);
    CHECK(slurp(dir.file("model.json")) == model);
  }

  SUBCASE("input problems") {
    CHECK(invoke({"--out-dir", dir.str(), "train"}).code == 2);
    CHECK(invoke({"--out-dir", dir.str(), "train", "--data", dir.file("nope.csv")}).code == 2);
    csv::write_file(dir.file("broken.csv"), "x0,y0,z0,label,settle_time\n1,2,3,1,0.5\n1,2,oops,0,1\n");
    const auto r = invoke({"--out-dir", dir.str(), "train", "--data", dir.file("broken.csv"), "--test-frac", "0.5"});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(invoke({"--out-dir", dir.str(), "train", "--data", dir.file("dataset.csv"), "--arch", "3,a,1"}).code == 2);
    CHECK(invoke({"--out-dir", dir.str(), "train", "--data", dir.file("dataset.csv"), "--arch", "2,4,1"}).code == 2);
  }
}

TEST_CASE("reconstruct") {
  TempDir dir("recon");
  make_model(dir);
  const std::string model = dir.file("model.json");
  const auto net = mlp::model_from_json(slurp(model));

  SUBCASE("sphere rows") {
    const auto r = invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "sphere",
                        "--n-theta", "12", "--n-phi", "17"});
    REQUIRE(r.code == 0);
    const std::string text = slurp(dir.file("sphere.csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 12 * 17);
    const auto meta = read_json(dir.file("sphere.json"));
    CHECK(meta["spec"]["center"] == json::array({0.0, 0.0, 11.0}));
  }

  SUBCASE("volume honors the band exactly") {
    const auto r = invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "volume",
                        "--resolution", "15", "--band", "0.45", "0.7"});
    REQUIRE(r.code == 0);
    LatticeSpec3D lattice;
    lattice.nx = lattice.ny = lattice.nz = 15;
    const auto field = evaluate_volume(net, lattice, 1);
    std::size_t expected = 0;
    for (double p : field.probs) expected += (p > 0.45 && p < 0.7) ? 1 : 0;
    const std::string text = slurp(dir.file("boundary.csv"));
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == expected + 1);
    CHECK(text == boundary_to_csv(extract_boundary(net, lattice, {0.45, 0.7}, 1)));
    CHECK(invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "volume", "--band", "0.6", "0.7"})
              .code == 2);
  }

  SUBCASE("slice with ground truth") {
    const auto r = invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "slice",
                        "--nx", "9", "--ny", "7", "--truth"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("grid_accuracy") != std::string::npos);
    const std::string text = slurp(dir.file("slice.csv"));
    CHECK(text.rfind("x,y,z,prob,class,truth\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 63);
    CHECK(read_json(dir.file("slice.json"))["grid_accuracy"]["compared"].get<int>() > 0);
    CHECK(fs::exists(dir.file("reconstruct.config.json")));
  }

  SUBCASE("mismatches and bad inputs") {
    CHECK(invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "slice", "--arch", "3,64,1"}).code ==
          2);
    CHECK(invoke({"--out-dir", dir.str(), "reconstruct", "--model", dir.file("none.json"), "--mode", "slice"}).code == 2);
    csv::write_file(dir.file("junk.json"), "{\"format_version\": \"nope\"}");
    CHECK(invoke({"--out-dir", dir.str(), "reconstruct", "--model", dir.file("junk.json"), "--mode", "slice"}).code == 1);
    CHECK(invoke({"--out-dir", dir.str(), "reconstruct", "--model", model, "--mode", "sphere", "--truth"}).code == 2);
  }
}

TEST_CASE("entropy") {
  TempDir dir("entropy");
  CHECK(invoke({"--out-dir", dir.str(), "entropy", "--r", "12", "--trajs-per-box", "1"}).code == 2);
  CHECK(invoke({"--out-dir", dir.str(), "entropy", "--r", "30"}).code == 2);

  REQUIRE(invoke({"--seed", "11", "--out-dir", dir.str(), "entropy", "--r", "12"}).code == 0);
  const auto low = read_json(dir.file("entropy.json"));
  const std::string boxes = slurp(dir.file("entropy_boxes.csv"));
  CHECK(low.contains("config"));
  CHECK(low["config"]["params"]["r"] == 12.0);
  CHECK(std::count(boxes.begin(), boxes.end(), '\n') == 26);

  REQUIRE(invoke({"--seed", "11", "--out-dir", dir.str(), "entropy", "--r", "20"}).code == 0);
  const auto high = read_json(dir.file("entropy.json"));
  MESSAGE("S_b(12) = " << low["basin_entropy"] << ", S_b(20) = " << high["basin_entropy"]);
  CHECK(high["basin_entropy"].get<double>() > low["basin_entropy"].get<double>());

  REQUIRE(invoke({"--seed", "11", "--workers", "1", "--out-dir", dir.str(), "entropy", "--r", "12"}).code == 0);
  CHECK(slurp(dir.file("entropy_boxes.csv")) == boxes);
}

TEST_CASE("sweep") {
  TempDir dir("sweep");
  const std::vector<std::string> small{"--n", "300", "--arch", "3,8,1", "--epochs", "5", "--boxes", "3",
                                       "--trajs-per-box", "4"};
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.end(), small.begin(), small.end());
    return head;
  };

  SUBCASE("a single r succeeds but refuses fits") {
    const auto r = invoke(with({"--out-dir", dir.str(), "sweep", "--r-list", "12"}));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("fits refused") != std::string::npos);
    CHECK(read_json(dir.file("fits.json")).contains("refused"));
    const std::string text = slurp(dir.file("sweep.csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  }

  SUBCASE("fits are written and outputs are reproducible") {
    const auto args = with({"--seed", "2", "--out-dir", dir.str(), "sweep", "--r-list", "6,10,14,18,22"});
    REQUIRE(invoke(args).code == 0);
    const std::string first = slurp(dir.file("sweep.csv"));
    const std::string fits_first = slurp(dir.file("fits.json"));
    const auto fits = json::parse(fits_first);
    CHECK(fits.contains("accuracy_vs_r"));
    CHECK(fits.contains("entropy_vs_r"));
    CHECK(fits["accuracy_vs_entropy"].contains("parameters"));
    CHECK(fits["two_region"].contains("error"));  // two rows on the low side

    auto again = args;
    again.insert(again.begin(), {"--workers", "1"});
    REQUIRE(invoke(again).code == 0);
    CHECK(slurp(dir.file("sweep.csv")) == first);
    CHECK(slurp(dir.file("fits.json")) == fits_first);
  }

  SUBCASE("preconditions") {
    CHECK(invoke(with({"--out-dir", dir.str(), "sweep", "--r-list", "14,12"})).code == 2);
    CHECK(invoke(with({"--out-dir", dir.str(), "sweep", "--r-list", "12,26"})).code == 2);
    CHECK(invoke(with({"--out-dir", dir.str(), "sweep", "--r-list", "12,x"})).code == 2);
  }
}
