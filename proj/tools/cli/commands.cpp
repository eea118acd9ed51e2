#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "basins/boundary.hpp"
#include "basins/csv.hpp"
#include "basins/entropy.hpp"
#include "basins/fit.hpp"
#include "basins/json_io.hpp"
#include "basins/labeling.hpp"
#include "basins/mlp.hpp"
#include "basins/stats.hpp"
#include "basins/sweep.hpp"
#include "run_config.hpp"

namespace basins::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_json(const fs::path& path, const json& j) { csv::write_file(path.string(), j.dump(2) + "\n"); }

void echo_config(const RunConfig& cfg, const std::string& command) {
  write_json(cfg.out_dir / (command + ".config.json"), to_json(cfg));
}

void require_bistable(const LorenzParams& p) {
  try {
    p.validate();
    p.validate_bistable();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void require_input_file(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("no ") + what + " given");
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " '" + path + "' does not exist");
}

/// Runs `fn` and rethrows std::invalid_argument as a usage error.
template <typename F>
void validated(F&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Flags shared by subcommands that train networks.
struct ArchFlags {
  std::optional<std::string> arch;
  std::optional<std::string> activation;

  void add(CLI::App* app) {
    app->add_option("--arch", arch, "Layer widths, comma separated (e.g. 3,64,64,32,1)");
    app->add_option("--activation", activation, "Hidden activation: relu, tanh or logistic");
  }
  void apply(RunConfig& cfg) const {
    if (arch) {
      cfg.arch.layer_sizes = parse_int_list(*arch);
      cfg.arch_explicit = true;
    }
    if (activation) {
      validated([&] { cfg.arch.hidden_activation = mlp::activation_from_string(*activation); });
      cfg.arch_explicit = true;
    }
  }
};

struct TrainFlags {
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> batch_size;
  std::optional<double> lr;
  std::optional<std::string> optimizer;

  void add(CLI::App* app) {
    app->add_option("--epochs", epochs, "Training epochs");
    app->add_option("--batch-size", batch_size, "Mini-batch size");
    app->add_option("--lr", lr, "Learning rate");
    app->add_option("--optimizer", optimizer, "adam or sgd");
  }
  void apply(RunConfig& cfg) const {
    if (epochs) cfg.train.epochs = *epochs;
    if (batch_size) cfg.train.batch_size = *batch_size;
    if (lr) cfg.train.learning_rate = *lr;
    if (optimizer) validated([&] { cfg.train.optimizer = mlp::optimizer_from_string(*optimizer); });
  }
};

struct EntropyFlags {
  std::optional<std::size_t> boxes;
  std::optional<std::size_t> trajs_per_box;
  std::optional<double> box_side;
  std::optional<std::string> log_base;

  void add(CLI::App* app) {
    app->add_option("--boxes", boxes, "Number of boxes");
    app->add_option("--trajs-per-box", trajs_per_box, "Orbits per box (at least 2)");
    app->add_option("--box-side", box_side, "Box side length");
    app->add_option("--log-base", log_base, "natural or 2");
  }
  void apply(RunConfig& cfg) const {
    if (boxes) cfg.entropy.n_boxes = *boxes;
    if (trajs_per_box) cfg.entropy.trajs_per_box = *trajs_per_box;
    if (box_side) cfg.entropy.box_side = *box_side;
    if (log_base) validated([&] { cfg.entropy.log_base = log_base_from_string(*log_base); });
  }
};

// gen-data -------------------------------------------------------------------

struct GenData {
  std::optional<double> r;
  std::optional<std::size_t> n;
  std::string out = "dataset.csv";

  void add(CLI::App* app) {
    app->add_option("--r", r, "Lorenz parameter r, inside the bistable range");
    app->add_option("--n", n, "Number of initial conditions to sample");
    app->add_option("--out", out, "Dataset file name inside the output directory")->capture_default_str();
  }
  void apply(RunConfig& cfg) const {
    if (r) cfg.params.r = *r;
    if (n) cfg.dataset_size = *n;
  }

  int run(const RunConfig& cfg, std::ostream& os) const {
    require_bistable(cfg.params);
    validated([&] {
      cfg.domain.validate();
      cfg.integrator.validate();
    });
    if (cfg.dataset_size == 0) throw UsageError("--n must be positive");

    const auto seeds = step_seeds(cfg.seed);
    const Dataset data = generate_dataset(cfg.params, cfg.dataset_size, cfg.domain, cfg.integrator,
                                          seeds.dataset, cfg.workers);
    const fs::path csv_path = cfg.out_dir / out;
    fs::path meta_path = csv_path;
    meta_path.replace_extension(".json");
    write_dataset_csv(csv_path.string(), data.samples);

    DatasetMetadata meta;
    meta.params = cfg.params;
    meta.domain = cfg.domain;
    meta.integrator = cfg.integrator;
    meta.seed = seeds.dataset;
    meta.requested = data.requested;
    meta.failures = data.failures;
    meta.undecided_fraction = data.undecided_fraction;
    csv::write_file(meta_path.string(), metadata_to_json(meta));
    echo_config(cfg, "gen-data");

    os << "wrote " << data.samples.size() << " labeled samples to " << csv_path.string() << "\n"
       << "undecided_fraction " << data.undecided_fraction << " (" << data.failures
       << " integration failures)\n";
    return kExitOk;
  }
};

// train ----------------------------------------------------------------------

struct Train {
  std::optional<std::string> data;
  std::optional<double> test_frac;
  std::optional<double> r;
  std::string out_model = "model.json";
  ArchFlags arch;
  TrainFlags train;

  void add(CLI::App* app) {
    app->add_option("--data", data, "Dataset CSV written by gen-data");
    app->add_option("--test-frac", test_frac, "Held-out fraction; the test set gets floor(frac * n) samples");
    app->add_option("--r", r, "Lorenz r recorded in the model provenance (default: from the dataset sidecar)");
    app->add_option("--out-model", out_model, "Model file name inside the output directory")->capture_default_str();
    arch.add(app);
    train.add(app);
  }
  void apply(RunConfig& cfg) const {
    if (data) cfg.data_path = *data;
    if (test_frac) cfg.test_fraction = *test_frac;
    arch.apply(cfg);
    train.apply(cfg);
  }

  int run(const RunConfig& cfg, std::ostream& os) const {
    require_input_file(cfg.data_path, "dataset");
    validated([&] {
      cfg.arch.validate();
      cfg.train.validate();
    });
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
      throw UsageError("--test-frac must lie strictly between 0 and 1");
    }

    const auto samples = read_dataset_csv(cfg.data_path);
    const std::size_t n_test =
        static_cast<std::size_t>(std::floor(cfg.test_fraction * static_cast<double>(samples.size())));
    if (n_test == 0) {
      throw UsageError("test fraction " + csv::format_double(cfg.test_fraction) + " of " +
                       std::to_string(samples.size()) + " samples leaves an empty test set");
    }
    if (n_test >= samples.size()) throw UsageError("test fraction leaves an empty training set");

    const auto seeds = step_seeds(cfg.seed);
    const auto [train_set, test_set] = train_test_split_count(samples, samples.size() - n_test, seeds.split);
    mlp::TrainConfig tcfg = cfg.train;
    tcfg.seed = seeds.train;

    mlp::ModelProvenance prov;
    prov.train = tcfg;
    prov.dataset = cfg.data_path;
    fs::path sidecar = cfg.data_path;
    sidecar.replace_extension(".json");
    if (r) {
      prov.r = *r;
    } else if (fs::is_regular_file(sidecar)) {
      prov.r = metadata_from_json(csv::read_file(sidecar.string())).params.r;
    }

    mlp::TrainResult trained;
    try {
      trained = mlp::train(train_set, test_set, cfg.arch, tcfg);
    } catch (const mlp::TrainingDiverged& e) {
      throw std::runtime_error(std::string("training diverged: ") + e.what());
    }

    const fs::path model_path = cfg.out_dir / out_model;
    csv::write_file(model_path.string(), mlp::model_to_json(trained.params, prov));
    json report = trained.report;
    report["train_size"] = train_set.size();
    report["test_size"] = test_set.size();
    report["model"] = model_path.string();
    write_json(cfg.out_dir / "train_report.json", report);
    echo_config(cfg, "train");

    const auto& hist = trained.report.loss_history;
    os << "train " << train_set.size() << " / test " << test_set.size() << " samples\n"
       << "train_accuracy " << trained.report.final_train_accuracy << "\n"
       << "test_accuracy " << trained.report.final_test_accuracy << "\n";
    if (!hist.empty()) {
      os << "loss " << hist.front() << " -> " << hist.back() << " over " << hist.size()
         << " epochs (min " << *std::min_element(hist.begin(), hist.end()) << ")\n";
    }
    os << "model written to " << model_path.string() << "\n";
    return kExitOk;
  }
};

// reconstruct ------------------------------------------------------------------

struct Reconstruct {
  std::optional<std::string> model;
  std::string mode;
  bool truth = false;
  std::optional<double> r;
  std::optional<double> plane;
  std::optional<std::size_t> nx, ny, n_theta, n_phi, resolution;
  std::optional<std::vector<double>> x_range, y_range, band;
  std::optional<double> radius;
  ArchFlags arch;

  void add(CLI::App* app) {
    app->add_option("--model", model, "Model JSON written by train");
    app->add_option("--mode", mode, "slice, sphere or volume")
        ->required()
        ->check(CLI::IsMember({"slice", "sphere", "volume"}));
    app->add_flag("--truth", truth, "Slice mode: also integrate ground truth and report grid accuracy");
    app->add_option("--r", r, "Lorenz r for ground truth and the sphere center (default: model provenance)");
    app->add_option("--plane", plane, "Slice plane z value");
    app->add_option("--nx", nx, "Slice points along x");
    app->add_option("--ny", ny, "Slice points along y");
    app->add_option("--x-range", x_range, "Slice x range: LO HI")->expected(2);
    app->add_option("--y-range", y_range, "Slice y range: LO HI")->expected(2);
    app->add_option("--n-theta", n_theta, "Sphere polar samples");
    app->add_option("--n-phi", n_phi, "Sphere azimuthal samples");
    app->add_option("--radius", radius, "Sphere radius");
    app->add_option("--resolution", resolution, "Volume lattice points per axis");
    app->add_option("--band", band, "Boundary probability band: LO HI")->expected(2);
    arch.add(app);
  }
  void apply(RunConfig& cfg) const {
    if (model) cfg.model_path = *model;
    if (plane) cfg.slice.plane = *plane;
    if (nx) cfg.slice.nx = *nx;
    if (ny) cfg.slice.ny = *ny;
    if (x_range) cfg.slice.x_range = {(*x_range)[0], (*x_range)[1]};
    if (y_range) cfg.slice.y_range = {(*y_range)[0], (*y_range)[1]};
    if (n_theta) cfg.sphere.n_theta = *n_theta;
    if (n_phi) cfg.sphere.n_phi = *n_phi;
    if (radius) cfg.sphere.radius = *radius;
    if (resolution) cfg.volume.nx = cfg.volume.ny = cfg.volume.nz = *resolution;
    if (band) cfg.band = {(*band)[0], (*band)[1]};
    arch.apply(cfg);
  }

  int run(RunConfig& cfg, std::ostream& os) const {
    require_input_file(cfg.model_path, "model file");
    mlp::ModelProvenance prov;
    const auto net = mlp::model_from_json(csv::read_file(cfg.model_path), &prov);
    if (cfg.arch_explicit && (cfg.arch.layer_sizes != net.arch.layer_sizes ||
                              cfg.arch.hidden_activation != net.arch.hidden_activation)) {
      throw UsageError("model architecture does not match the requested --arch/--activation");
    }
    if (r) {
      cfg.params.r = *r;
    } else if (prov.r > 0.0) {
      cfg.params.r = prov.r;
    }
    if (truth && mode != "slice") throw UsageError("--truth is only available in slice mode");

    json meta = {{"mode", mode},
                 {"r", cfg.params.r},
                 {"model", {{"path", cfg.model_path}, {"arch", net.arch}, {"trained_r", prov.r},
                            {"dataset", prov.dataset}}}};

    if (mode == "slice") {
      validated([&] { cfg.slice.validate(); });
      std::vector<int> labels;
      if (truth) {
        require_bistable(cfg.params);
        validated([&] { cfg.integrator.validate(); });
      }
      const auto field = evaluate_slice(net, cfg.slice, cfg.workers);
      meta["spec"] = cfg.slice;
      meta["points"] = field.points.size();
      if (truth) {
        labels = ground_truth_slice(cfg.params, cfg.slice, cfg.integrator, cfg.workers);
        const auto acc = grid_accuracy(field.classes, labels);
        meta["grid_accuracy"] = {{"accuracy", acc.accuracy}, {"compared", acc.compared},
                                 {"undecided", acc.undecided}};
        os << "grid_accuracy " << acc.accuracy << " over " << acc.compared << " decided cells ("
           << acc.undecided << " undecided)\n";
      }
      csv::write_file((cfg.out_dir / "slice.csv").string(), slice_to_csv(field, truth ? &labels : nullptr));
      write_json(cfg.out_dir / "slice.json", meta);
      os << "wrote " << field.points.size() << " slice points\n";
    } else if (mode == "sphere") {
      cfg.sphere.center = cfg.sphere_center.value_or(default_sphere(cfg.params).center);
      validated([&] { cfg.sphere.validate(); });
      const auto field = evaluate_sphere(net, cfg.sphere, cfg.workers);
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
      meta["spec"] = cfg.sphere;
      meta["points"] = field.points.size();
      meta["bands"] = {{"below_0.25", low}, {"between", mid}, {"above_0.75", high}};
      csv::write_file((cfg.out_dir / "sphere.csv").string(), sphere_to_csv(field, cfg.sphere));
      write_json(cfg.out_dir / "sphere.json", meta);
      os << "wrote " << field.points.size() << " sphere points; bands <0.25: " << low
         << ", 0.25-0.75: " << mid << ", >0.75: " << high << "\n";
    } else {
      validated([&] { cfg.volume.validate(); });
      std::vector<BoundaryPoint> pts;
      validated([&] { pts = extract_boundary(net, cfg.volume, cfg.band, cfg.workers); });
      meta["spec"] = cfg.volume;
      meta["band"] = cfg.band;
      meta["lattice_points"] = cfg.volume.size();
      meta["points"] = pts.size();
      csv::write_file((cfg.out_dir / "boundary.csv").string(), boundary_to_csv(pts));
      write_json(cfg.out_dir / "boundary.json", meta);
      if (pts.empty()) {
        os << "no lattice points fall inside the band; boundary.csv is empty\n";
      } else {
        os << "wrote " << pts.size() << " of " << cfg.volume.size() << " lattice points inside the band\n";
      }
    }
    echo_config(cfg, "reconstruct");
    return kExitOk;
  }
};

// entropy --------------------------------------------------------------------

struct Entropy {
  std::optional<double> r;
  EntropyFlags flags;

  void add(CLI::App* app) {
    app->add_option("--r", r, "Lorenz parameter r");
    flags.add(app);
  }
  void apply(RunConfig& cfg) const {
    if (r) cfg.params.r = *r;
    flags.apply(cfg);
  }

  int run(RunConfig& cfg, std::ostream& os) const {
    require_bistable(cfg.params);
    cfg.entropy.seed = step_seeds(cfg.seed).entropy;
    validated([&] {
      cfg.entropy.validate();
      cfg.integrator.validate();
    });
    const auto res = basin_entropy(cfg.params, cfg.entropy, cfg.integrator, cfg.workers);
    csv::write_file((cfg.out_dir / "entropy_boxes.csv").string(), boxes_to_csv(res.boxes));
    const json summary = {{"r", cfg.params.r},
                          {"basin_entropy", res.basin_entropy},
                          {"log_base", std::string(to_string(cfg.entropy.log_base))},
                          {"n_boxes", res.boxes.size()},
                          {"flagged_boxes", res.flagged_boxes},
                          {"config", to_json(cfg)}};
    write_json(cfg.out_dir / "entropy.json", summary);
    echo_config(cfg, "entropy");
    os << "basin_entropy " << res.basin_entropy << " (" << to_string(cfg.entropy.log_base) << ", "
       << res.flagged_boxes << " flagged boxes)\n";
    return kExitOk;
  }
};

// sweep ----------------------------------------------------------------------

struct Sweep {
  std::optional<std::string> r_list;
  std::optional<std::size_t> n;
  std::optional<double> test_frac;
  ArchFlags arch;
  TrainFlags train;
  EntropyFlags entropy;

  void add(CLI::App* app) {
    app->add_option("--r-list", r_list, "Ascending r values, comma separated");
    app->add_option("--n", n, "Dataset size per r");
    app->add_option("--test-frac", test_frac, "Held-out fraction per r");
    arch.add(app);
    train.add(app);
    entropy.add(app);
  }
  void apply(RunConfig& cfg) const {
    if (r_list) cfg.r_values = parse_double_list(*r_list);
    if (n) cfg.dataset_size = *n;
    if (test_frac) cfg.test_fraction = *test_frac;
    arch.apply(cfg);
    train.apply(cfg);
    entropy.apply(cfg);
  }

  static json fit_or_error(const std::function<FitResult()>& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      return json{{"error", e.what()}};
    }
  }

  int run(const RunConfig& cfg, std::ostream& os) const {
    if (cfg.r_values.empty()) throw UsageError("--r-list is empty");
    if (!std::is_sorted(cfg.r_values.begin(), cfg.r_values.end())) {
      throw UsageError("--r-list must be in ascending order");
    }
    for (double r : cfg.r_values) {
      LorenzParams p = cfg.params;
      p.r = r;
      require_bistable(p);
    }
    if (!(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0)) {
      throw UsageError("--test-frac must lie strictly between 0 and 1");
    }
    validated([&] {
      cfg.arch.validate();
      cfg.train.validate();
      cfg.entropy.validate();
      cfg.integrator.validate();
      cfg.domain.validate();
    });

    SweepConfig sc;
    sc.r_values = cfg.r_values;
    sc.base_params = cfg.params;
    sc.dataset_size = cfg.dataset_size;
    sc.train_fraction = 1.0 - cfg.test_fraction;
    sc.domain = cfg.domain;
    sc.integrator = cfg.integrator;
    sc.arch = cfg.arch;
    sc.train = cfg.train;
    sc.entropy = cfg.entropy;
    sc.master_seed = cfg.seed;
    sc.workers = cfg.workers;

    std::vector<SweepRow> rows;
    for (double r : sc.r_values) {
      rows.push_back(run_sweep_step(r, sc).row);
      const auto& row = rows.back();
      if (row.ok) {
        os << "r " << row.r << ": accuracy " << row.accuracy << ", basin_entropy " << row.basin_entropy << "\n";
      } else {
        os << "r " << row.r << ": failed (" << row.failure << ")\n";
      }
    }
    csv::write_file((cfg.out_dir / "sweep.csv").string(), sweep_to_csv(rows));

    std::vector<double> rs, acc, sb;
    for (const auto& row : rows) {
      if (!row.ok) continue;
      rs.push_back(row.r);
      acc.push_back(row.accuracy);
      sb.push_back(row.basin_entropy);
    }
    json fits;
    constexpr std::size_t kMinRowsForFits = 4;
    if (rs.size() < kMinRowsForFits) {
      const std::string msg = "fits refused: " + std::to_string(rs.size()) +
                              " successful r values, at least " + std::to_string(kMinRowsForFits) +
                              " are needed";
      fits = {{"refused", msg}};
      os << msg << "\n";
    } else {
      fits["accuracy_vs_r"] = fit_or_error([&] { return fit_exponential(rs, acc); });
      fits["entropy_vs_r"] = fit_or_error([&] { return fit_exponential(rs, sb); });
      fits["accuracy_vs_entropy"] = fit_or_error([&] { return fit_linear(sb, acc); });
      try {
        const auto two = two_region_fits(rows);
        fits["two_region"] = {{"low", two.low}, {"high", two.high}, {"low_count", two.low_count},
                              {"high_count", two.high_count}};
      } catch (const std::invalid_argument& e) {
        fits["two_region"] = {{"error", e.what()}};
      }
      fits["spearman_r_accuracy"] = stats::spearman(rs, acc);
      std::vector<double> rs_high, sb_high;
      for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] >= 14.0) {
          rs_high.push_back(rs[i]);
          sb_high.push_back(sb[i]);
        }
      }
      if (rs_high.size() >= 2) fits["spearman_r_entropy_high"] = stats::spearman(rs_high, sb_high);

      const auto& lin = fits["accuracy_vs_entropy"];
      if (lin.contains("parameters")) {
        os << "accuracy = intercept + slope * S_b: slope "
           << lin["parameters"]["slope"]["estimate"].dump() << " (p "
           << lin["parameters"]["slope"]["p_value"].dump() << ")\n";
      }
    }
    write_json(cfg.out_dir / "fits.json", fits);
    echo_config(cfg, "sweep");
    return kExitOk;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Basins of attraction of the bistable Lorenz system from a neural classifier", "basins"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out_dir;
  app.add_option("--config", config_path, "JSON config; flags override its values");
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--workers", workers, "Worker threads (0 = available parallelism)");
  app.add_option("--out-dir", out_dir, "Existing directory for outputs (default: current directory)");

  GenData gen;
  Train train;
  Reconstruct recon;
  Entropy ent;
  Sweep swp;
  auto* gen_app = app.add_subcommand("gen-data", "Sample and label initial conditions");
  auto* train_app = app.add_subcommand("train", "Train a classifier on a dataset");
  auto* recon_app = app.add_subcommand("reconstruct", "Evaluate a model on a slice, sphere or volume");
  auto* ent_app = app.add_subcommand("entropy", "Estimate the basin entropy");
  auto* sweep_app = app.add_subcommand("sweep", "Accuracy and basin entropy across r, with fits");
  gen.add(gen_app);
  train.add(train_app);
  recon.add(recon_app);
  ent.add(ent_app);
  swp.add(sweep_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  try {
    RunConfig cfg = config_path ? load_config_file(*config_path) : RunConfig{};
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (out_dir) cfg.out_dir = *out_dir;
    cfg.workers = resolve_workers(cfg.workers);
    if (!fs::is_directory(cfg.out_dir)) {
      throw UsageError("output directory '" + cfg.out_dir.string() + "' does not exist");
    }

    if (gen_app->parsed()) {
      gen.apply(cfg);
      return gen.run(cfg, out);
    }
    if (train_app->parsed()) {
      train.apply(cfg);
      return train.run(cfg, out);
    }
    if (recon_app->parsed()) {
      recon.apply(cfg);
      return recon.run(cfg, out);
    }
    if (ent_app->parsed()) {
      ent.apply(cfg);
      return ent.run(cfg, out);
    }
    swp.apply(cfg);
    return swp.run(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace basins::cli
