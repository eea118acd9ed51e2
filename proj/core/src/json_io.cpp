#include "basins/json_io.hpp"

#include <cmath>
#include <limits>

namespace basins {

namespace {

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& field) {
  if (const auto it = j.find(key); it != j.end()) it->get_to(field);
}

/// JSON has no inf/nan; they are written as null and read back as nan.
nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void to_json(nlohmann::json& j, const State3& s) { j = nlohmann::json::array({s.x, s.y, s.z}); }

void from_json(const nlohmann::json& j, State3& s) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("a state must be a 3-element array");
  s = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void to_json(nlohmann::json& j, const LorenzParams& p) {
  j = {{"sigma", p.sigma}, {"r", p.r}, {"beta", p.beta}};
}

void from_json(const nlohmann::json& j, LorenzParams& p) {
  read_opt(j, "sigma", p.sigma);
  read_opt(j, "r", p.r);
  read_opt(j, "beta", p.beta);
}

void to_json(nlohmann::json& j, const IntegratorConfig& c) {
  j = {{"abs_tol", c.abs_tol},           {"rel_tol", c.rel_tol},
       {"max_time", c.max_time},         {"initial_step", c.initial_step},
       {"min_step", c.min_step},         {"max_step", c.max_step},
       {"convergence_radius", c.convergence_radius}};
}

void from_json(const nlohmann::json& j, IntegratorConfig& c) {
  read_opt(j, "abs_tol", c.abs_tol);
  read_opt(j, "rel_tol", c.rel_tol);
  read_opt(j, "max_time", c.max_time);
  read_opt(j, "initial_step", c.initial_step);
  read_opt(j, "min_step", c.min_step);
  read_opt(j, "max_step", c.max_step);
  read_opt(j, "convergence_radius", c.convergence_radius);
}

void to_json(nlohmann::json& j, const SamplingDomain& d) {
  j = {{"lower", d.lower}, {"upper", d.upper}};
}

void from_json(const nlohmann::json& j, SamplingDomain& d) {
  read_opt(j, "lower", d.lower);
  read_opt(j, "upper", d.upper);
}

void to_json(nlohmann::json& j, const EntropyConfig& c) {
  j = {{"n_boxes", c.n_boxes}, {"trajs_per_box", c.trajs_per_box},
       {"box_side", c.box_side}, {"domain", c.domain},
       {"log_base", std::string(to_string(c.log_base))}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, EntropyConfig& c) {
  read_opt(j, "n_boxes", c.n_boxes);
  read_opt(j, "trajs_per_box", c.trajs_per_box);
  read_opt(j, "box_side", c.box_side);
  read_opt(j, "domain", c.domain);
  if (const auto it = j.find("log_base"); it != j.end()) {
    c.log_base = it->is_number() ? (it->get<double>() == 2.0 ? LogBase::Two : LogBase::Natural)
                                 : log_base_from_string(it->get<std::string>());
  }
  read_opt(j, "seed", c.seed);
}

void to_json(nlohmann::json& j, const Range& r) { j = nlohmann::json::array({r.lo, r.hi}); }

void from_json(const nlohmann::json& j, Range& r) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a range must be a 2-element array");
  r = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(nlohmann::json& j, const GridSpec2D& g) {
  j = {{"plane_z", g.plane}, {"x_range", g.x_range}, {"y_range", g.y_range},
       {"nx", g.nx},         {"ny", g.ny}};
}

void from_json(const nlohmann::json& j, GridSpec2D& g) {
  read_opt(j, "plane_z", g.plane);
  read_opt(j, "x_range", g.x_range);
  read_opt(j, "y_range", g.y_range);
  read_opt(j, "nx", g.nx);
  read_opt(j, "ny", g.ny);
}

void to_json(nlohmann::json& j, const SphereSpec& s) {
  j = {{"radius", s.radius}, {"center", s.center}, {"n_theta", s.n_theta}, {"n_phi", s.n_phi}};
}

void from_json(const nlohmann::json& j, SphereSpec& s) {
  read_opt(j, "radius", s.radius);
  read_opt(j, "center", s.center);
  read_opt(j, "n_theta", s.n_theta);
  read_opt(j, "n_phi", s.n_phi);
}

void to_json(nlohmann::json& j, const LatticeSpec3D& l) {
  j = {{"volume", l.volume}, {"resolution", {l.nx, l.ny, l.nz}}};
}

void from_json(const nlohmann::json& j, LatticeSpec3D& l) {
  read_opt(j, "volume", l.volume);
  if (const auto it = j.find("resolution"); it != j.end()) {
    if (it->is_number()) {
      l.nx = l.ny = l.nz = it->get<std::size_t>();
    } else {
      if (!it->is_array() || it->size() != 3) {
        throw std::invalid_argument("resolution must be a count or a 3-element array");
      }
      l.nx = (*it)[0].get<std::size_t>();
      l.ny = (*it)[1].get<std::size_t>();
      l.nz = (*it)[2].get<std::size_t>();
    }
  }
}

void to_json(nlohmann::json& j, const FitResult& f) {
  j = nlohmann::json::object();
  for (std::size_t i = 0; i < f.names.size(); ++i) {
    nlohmann::json entry = {{"estimate", number_or_null(f.params[i])},
                            {"std_error", number_or_null(f.std_errors[i])}};
    if (i < f.p_values.size()) entry["p_value"] = number_or_null(f.p_values[i]);
    j["parameters"][f.names[i]] = entry;
  }
  j["parameter_order"] = f.names;
  j["residual_norm"] = number_or_null(f.residual_norm);
  j["converged"] = f.converged;
  j["singular"] = f.singular;
  j["iterations"] = f.iterations;
  j["message"] = f.message;
}

void to_json(nlohmann::json& j, const SweepRow& r) {
  j = {{"r", r.r},
       {"accuracy", number_or_null(r.accuracy)},
       {"basin_entropy", number_or_null(r.basin_entropy)},
       {"undecided_fraction", r.undecided_fraction},
       {"ok", r.ok}};
  if (!r.ok) j["failure"] = r.failure;
}

void to_json(nlohmann::json& j, const BoxCounts& c) {
  j = {{"n0", c.c_minus}, {"n1", c.c_plus}, {"n_undecided", c.undecided}};
}

namespace mlp {

void to_json(nlohmann::json& j, const NetworkArch& a) {
  j = {{"layer_sizes", a.layer_sizes},
       {"hidden_activation", std::string(to_string(a.hidden_activation))},
       {"output_activation", "logistic"}};
}

void from_json(const nlohmann::json& j, NetworkArch& a) {
  read_opt(j, "layer_sizes", a.layer_sizes);
  if (const auto it = j.find("hidden_activation"); it != j.end()) {
    a.hidden_activation = activation_from_string(it->get<std::string>());
  }
  if (const auto it = j.find("output_activation"); it != j.end() && it->get<std::string>() != "logistic") {
    throw std::invalid_argument("output activation must be logistic");
  }
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"optimizer", std::string(to_string(c.optimizer))},
       {"learning_rate", c.learning_rate},
       {"batch_size", c.batch_size},
       {"epochs", c.epochs},
       {"seed", c.seed},
       {"adam_beta1", c.adam_beta1},
       {"adam_beta2", c.adam_beta2},
       {"adam_eps", c.adam_eps},
       {"prob_clip", c.prob_clip}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  if (const auto it = j.find("optimizer"); it != j.end()) {
    c.optimizer = optimizer_from_string(it->get<std::string>());
  }
  read_opt(j, "learning_rate", c.learning_rate);
  read_opt(j, "batch_size", c.batch_size);
  read_opt(j, "epochs", c.epochs);
  read_opt(j, "seed", c.seed);
  read_opt(j, "adam_beta1", c.adam_beta1);
  read_opt(j, "adam_beta2", c.adam_beta2);
  read_opt(j, "adam_eps", c.adam_eps);
  read_opt(j, "prob_clip", c.prob_clip);
}

void to_json(nlohmann::json& j, const TrainReport& r) {
  j = {{"loss_history", r.loss_history},
       {"final_train_accuracy", r.final_train_accuracy},
       {"final_test_accuracy", r.final_test_accuracy}};
}

void from_json(const nlohmann::json& j, TrainReport& r) {
  read_opt(j, "loss_history", r.loss_history);
  read_opt(j, "final_train_accuracy", r.final_train_accuracy);
  read_opt(j, "final_test_accuracy", r.final_test_accuracy);
}

}  // namespace mlp

}  // namespace basins
