#include "run_config.hpp"

#include <fstream>
#include <set>

#include "basins/csv.hpp"
#include "basins/json_io.hpp"

namespace basins::cli {

namespace {

const std::set<std::string> kKnownKeys{
    "params", "integrator", "domain", "dataset_size", "test_fraction", "arch",
    "train",  "entropy",    "slice",  "sphere",       "volume",        "band",
    "r_values", "seed",     "workers", "out_dir",     "data",          "model"};

template <typename T>
void overlay(const nlohmann::json& j, const char* key, T& field) {
  if (const auto it = j.find(key); it != j.end()) it->get_to(field);
}

template <typename T>
void overlay_count(const nlohmann::json& j, const char* key, T& field) {
  if (const auto it = j.find(key); it != j.end()) {
    if (!it->is_number_unsigned()) throw UsageError(std::string("config: '") + key + "' must be a non-negative integer");
    field = it->get<T>();
  }
}

}  // namespace

void apply_json(const nlohmann::json& j, RunConfig& cfg) {
  if (!j.is_object()) throw UsageError("config: top level must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKnownKeys.contains(key)) throw UsageError("config: unknown key '" + key + "'");
  }
  try {
    overlay(j, "params", cfg.params);
    overlay(j, "integrator", cfg.integrator);
    overlay(j, "domain", cfg.domain);
    overlay_count(j, "dataset_size", cfg.dataset_size);
    overlay(j, "test_fraction", cfg.test_fraction);
    if (j.contains("arch")) {
      j.at("arch").get_to(cfg.arch);
      cfg.arch_explicit = true;
    }
    overlay(j, "train", cfg.train);
    overlay(j, "entropy", cfg.entropy);
    overlay(j, "slice", cfg.slice);
    if (const auto it = j.find("sphere"); it != j.end()) {
      it->get_to(cfg.sphere);
      if (it->contains("center")) cfg.sphere_center = cfg.sphere.center;
    }
    overlay(j, "volume", cfg.volume);
    overlay(j, "band", cfg.band);
    overlay(j, "r_values", cfg.r_values);
    overlay_count(j, "seed", cfg.seed);
    overlay_count(j, "workers", cfg.workers);
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    overlay(j, "data", cfg.data_path);
    overlay(j, "model", cfg.model_path);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path.string() + "': " + e.what());
  }
  RunConfig cfg;
  apply_json(j, cfg);
  return cfg;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json sphere = cfg.sphere;
  nlohmann::json j = {{"params", cfg.params},
                      {"integrator", cfg.integrator},
                      {"domain", cfg.domain},
                      {"dataset_size", cfg.dataset_size},
                      {"test_fraction", cfg.test_fraction},
                      {"arch", cfg.arch},
                      {"train", cfg.train},
                      {"entropy", cfg.entropy},
                      {"slice", cfg.slice},
                      {"sphere", sphere},
                      {"volume", cfg.volume},
                      {"band", cfg.band},
                      {"r_values", cfg.r_values},
                      {"seed", cfg.seed},
                      {"workers", cfg.workers},
                      {"out_dir", cfg.out_dir.string()},
                      {"data", cfg.data_path},
                      {"model", cfg.model_path}};
  return j;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto field : csv::split(text)) {
    long v = 0;
    if (!csv::parse_int(field, v)) {
      throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto field : csv::split(text)) {
    double v = 0.0;
    if (!csv::parse_double(field, v)) {
      throw UsageError("expected a comma-separated list of numbers, got '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace basins::cli
