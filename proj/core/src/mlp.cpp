#include "basins/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "basins/rng.hpp"

namespace basins::mlp {

namespace {

constexpr std::uint64_t kInitStream = 0x696e6974ULL;
constexpr std::uint64_t kShuffleStream = 0x73687566ULL;

double logistic(double a) { return 1.0 / (1.0 + std::exp(-a)); }

void activate(Eigen::MatrixXd& a, Activation act) {
  switch (act) {
    case Activation::Relu: a = a.cwiseMax(0.0); break;
    case Activation::Tanh: a = a.array().tanh().matrix(); break;
    case Activation::Logistic: a = a.unaryExpr([](double v) { return logistic(v); }); break;
  }
}

/// Derivative of the activation expressed through its output value.
Eigen::MatrixXd activation_slope(const Eigen::MatrixXd& out, Activation act) {
  switch (act) {
    case Activation::Relu: return out.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    case Activation::Tanh: return (1.0 - out.array().square()).matrix();
    case Activation::Logistic: return (out.array() * (1.0 - out.array())).matrix();
  }
  return {};
}

Eigen::MatrixXd to_input_matrix(std::span<const State3> xs, double scale) {
  Eigen::MatrixXd m(3, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto c = static_cast<Eigen::Index>(j);
    m(0, c) = xs[j].x / scale;
    m(1, c) = xs[j].y / scale;
    m(2, c) = xs[j].z / scale;
  }
  return m;
}

/// Layer outputs for a batch held column-wise. outs[0] is the scaled input,
/// outs.back() the 1 x n row of probabilities.
std::vector<Eigen::MatrixXd> forward_layers(const NetworkParams& params, Eigen::MatrixXd input) {
  const std::size_t L = params.weights.size();
  std::vector<Eigen::MatrixXd> outs;
  outs.reserve(L + 1);
  outs.push_back(std::move(input));
  for (std::size_t l = 0; l < L; ++l) {
    Eigen::MatrixXd a = params.weights[l] * outs.back();
    a.colwise() += params.biases[l];
    activate(a, l + 1 == L ? Activation::Logistic : params.arch.hidden_activation);
    outs.push_back(std::move(a));
  }
  return outs;
}

double clamp_prob(double p, double clip) { return std::clamp(p, clip, 1.0 - clip); }

double sample_loss(double p, int y, double clip) {
  const double q = clamp_prob(p, clip);
  return y == 1 ? -std::log(q) : -std::log1p(-q);
}

struct BatchPass {
  Gradients grads;
  double loss = 0.0;
};

BatchPass backprop(const NetworkParams& params, const Eigen::MatrixXd& input,
                   std::span<const int> labels, double clip) {
  const auto outs = forward_layers(params, input);
  const std::size_t L = params.weights.size();
  const auto n = static_cast<Eigen::Index>(labels.size());
  const double inv_n = 1.0 / static_cast<double>(n);

  BatchPass pass;
  Eigen::MatrixXd delta(1, n);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double p = outs[L](0, j);
    const int y = labels[static_cast<std::size_t>(j)];
    loss += sample_loss(p, y, clip);
    const bool clamped = p < clip || p > 1.0 - clip;
    delta(0, j) = clamped ? 0.0 : (p - static_cast<double>(y)) * inv_n;
  }
  pass.loss = loss * inv_n;

  pass.grads.weights.resize(L);
  pass.grads.biases.resize(L);
  for (std::size_t l = L; l-- > 0;) {
    pass.grads.weights[l] = delta * outs[l].transpose();
    pass.grads.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = params.weights[l].transpose() * delta;
      delta = back.cwiseProduct(activation_slope(outs[l], params.arch.hidden_activation));
    }
  }
  return pass;
}

std::vector<int> labels_of(std::span<const LabeledSample> batch) {
  std::vector<int> y(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const int v = encode(batch[i].label);
    if (v != 0 && v != 1) throw std::invalid_argument("training labels must be 0 or 1");
    y[i] = v;
  }
  return y;
}

std::vector<State3> inputs_of(std::span<const LabeledSample> batch) {
  std::vector<State3> xs(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) xs[i] = batch[i].ic;
  return xs;
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Relu: return "relu";
    case Activation::Tanh: return "tanh";
    case Activation::Logistic: return "logistic";
  }
  return "unknown";
}

Activation activation_from_string(std::string_view s) {
  if (s == "relu") return Activation::Relu;
  if (s == "tanh") return Activation::Tanh;
  if (s == "logistic") return Activation::Logistic;
  throw std::invalid_argument("unknown activation '" + std::string(s) + "'");
}

std::string_view to_string(Optimizer o) { return o == Optimizer::Adam ? "adam" : "sgd"; }

Optimizer optimizer_from_string(std::string_view s) {
  if (s == "adam") return Optimizer::Adam;
  if (s == "sgd") return Optimizer::Sgd;
  throw std::invalid_argument("unknown optimizer '" + std::string(s) + "'");
}

void NetworkArch::validate() const {
  if (layer_sizes.size() < 3) throw std::invalid_argument("network needs at least one hidden layer");
  if (layer_sizes.front() != 3) throw std::invalid_argument("network input width must be 3");
  if (layer_sizes.back() != 1) throw std::invalid_argument("network output width must be 1");
  for (int w : layer_sizes) {
    if (w < 1) throw std::invalid_argument("layer widths must be positive");
  }
}

void NetworkParams::validate() const {
  arch.validate();
  const std::size_t L = arch.num_layers();
  if (weights.size() != L || biases.size() != L) {
    throw std::invalid_argument("parameter layer count does not match the architecture");
  }
  for (std::size_t l = 0; l < L; ++l) {
    if (weights[l].rows() != arch.layer_sizes[l + 1] || weights[l].cols() != arch.layer_sizes[l] ||
        biases[l].size() != arch.layer_sizes[l + 1]) {
      throw std::invalid_argument("layer " + std::to_string(l + 1) +
                                  " parameter shapes do not match the architecture");
    }
    if (!weights[l].allFinite() || !biases[l].allFinite()) {
      throw std::invalid_argument("layer " + std::to_string(l + 1) + " has non-finite parameters");
    }
  }
  if (!(std::isfinite(input_scale) && input_scale > 0.0)) {
    throw std::invalid_argument("input scale must be positive");
  }
}

std::size_t NetworkParams::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  }
  return n;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (batch_size == 0) throw std::invalid_argument("batch size must be at least 1");
  if (epochs == 0) throw std::invalid_argument("epochs must be at least 1");
  if (!(prob_clip > 0.0 && prob_clip < 0.5)) {
    throw std::invalid_argument("prob_clip must lie in (0, 0.5)");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0) ||
      !(adam_eps > 0.0)) {
    throw std::invalid_argument("invalid Adam hyper-parameters");
  }
}

NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed) {
  arch.validate();
  Rng rng = Rng::substream(seed, kInitStream);
  NetworkParams p;
  p.arch = arch;
  const std::size_t L = arch.num_layers();
  for (std::size_t l = 0; l < L; ++l) {
    const int fan_in = arch.layer_sizes[l];
    const int fan_out = arch.layer_sizes[l + 1];
    Eigen::MatrixXd w(fan_out, fan_in);
    // The output unit is logistic, so it always takes the Glorot branch.
    const bool relu = arch.hidden_activation == Activation::Relu && l + 1 < L;
    if (relu) {
      const double sd = std::sqrt(2.0 / fan_in);
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = sd * rng.normal();
    } else {
      const double a = std::sqrt(6.0 / (fan_in + fan_out));
      for (Eigen::Index i = 0; i < w.rows(); ++i)
        for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-a, a);
    }
    p.weights.push_back(std::move(w));
    p.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return p;
}

double forward(const NetworkParams& params, const State3& x) {
  const State3 one[1] = {x};
  return forward_batch(params, one).front();
}

std::vector<double> forward_batch(const NetworkParams& params, std::span<const State3> xs) {
  if (xs.empty()) return {};
  const auto outs = forward_layers(params, to_input_matrix(xs, params.input_scale));
  const Eigen::MatrixXd& probs = outs.back();
  return {probs.data(), probs.data() + probs.size()};
}

double bce_loss(std::span<const double> probs, std::span<const int> labels, double prob_clip) {
  if (probs.empty()) throw std::invalid_argument("cross-entropy of an empty batch");
  if (probs.size() != labels.size()) throw std::invalid_argument("probs/labels length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw std::invalid_argument("labels must be 0 or 1");
    total += sample_loss(probs[i], labels[i], prob_clip);
  }
  return total / static_cast<double>(probs.size());
}

double batch_loss(const NetworkParams& params, std::span<const LabeledSample> batch,
                  double prob_clip) {
  const auto xs = inputs_of(batch);
  const auto probs = forward_batch(params, xs);
  const auto y = labels_of(batch);
  return bce_loss(probs, y, prob_clip);
}

Gradients gradient(const NetworkParams& params, std::span<const LabeledSample> batch,
                   double prob_clip) {
  if (batch.empty()) throw std::invalid_argument("gradient of an empty batch");
  const auto xs = inputs_of(batch);
  const auto y = labels_of(batch);
  return backprop(params, to_input_matrix(xs, params.input_scale), y, prob_clip).grads;
}

int predict_class(const NetworkParams& params, const State3& x, double threshold) {
  return forward(params, x) >= threshold ? 1 : 0;
}

double accuracy(const NetworkParams& params, std::span<const LabeledSample> data) {
  if (data.empty()) throw std::invalid_argument("accuracy of an empty dataset");
  const auto xs = inputs_of(data);
  const auto probs = forward_batch(params, xs);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int predicted = probs[i] >= 0.5 ? 1 : 0;
    if (predicted == encode(data[i].label)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainResult train(std::span<const LabeledSample> train_data,
                  std::span<const LabeledSample> test_data, const NetworkArch& arch,
                  const TrainConfig& cfg) {
  if (train_data.empty()) throw std::invalid_argument("empty training set");
  if (test_data.empty()) throw std::invalid_argument("empty test set");
  cfg.validate();

  TrainResult result;
  NetworkParams& params = result.params;
  params = init_params(arch, cfg.seed);

  const std::size_t n = train_data.size();
  const Eigen::MatrixXd all_inputs = to_input_matrix(inputs_of(train_data), params.input_scale);
  const std::vector<int> all_labels = labels_of(train_data);

  const std::size_t L = params.weights.size();
  Gradients m1, m2;
  for (std::size_t l = 0; l < L; ++l) {
    m1.weights.push_back(Eigen::MatrixXd::Zero(params.weights[l].rows(), params.weights[l].cols()));
    m1.biases.push_back(Eigen::VectorXd::Zero(params.biases[l].size()));
  }
  m2 = m1;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  long step = 0;
  Eigen::MatrixXd batch_x;
  std::vector<int> batch_y;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng rng = Rng::substream(derive_seed(cfg.seed, kShuffleStream), epoch);
    shuffle(order.begin(), order.end(), rng);

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, n - start);
      batch_x.resize(3, static_cast<Eigen::Index>(count));
      batch_y.resize(count);
      for (std::size_t k = 0; k < count; ++k) {
        batch_x.col(static_cast<Eigen::Index>(k)) =
            all_inputs.col(static_cast<Eigen::Index>(order[start + k]));
        batch_y[k] = all_labels[order[start + k]];
      }

      const BatchPass pass = backprop(params, batch_x, batch_y, cfg.prob_clip);
      if (!std::isfinite(pass.loss)) {
        throw TrainingDiverged(epoch + 1, "training loss became non-finite in epoch " +
                                              std::to_string(epoch + 1));
      }
      epoch_loss += pass.loss * static_cast<double>(count);
      ++step;

      if (cfg.optimizer == Optimizer::Sgd) {
        for (std::size_t l = 0; l < L; ++l) {
          params.weights[l] -= cfg.learning_rate * pass.grads.weights[l];
          params.biases[l] -= cfg.learning_rate * pass.grads.biases[l];
        }
      } else {
        const double c1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
        auto update = [&](auto& theta, auto& m, auto& v, const auto& g) {
          m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
          v = cfg.adam_beta2 * v + (1.0 - cfg.adam_beta2) * g.cwiseProduct(g);
          theta.array() -= cfg.learning_rate * (m.array() / c1) /
                           ((v.array() / c2).sqrt() + cfg.adam_eps);
        };
        for (std::size_t l = 0; l < L; ++l) {
          update(params.weights[l], m1.weights[l], m2.weights[l], pass.grads.weights[l]);
          update(params.biases[l], m1.biases[l], m2.biases[l], pass.grads.biases[l]);
        }
      }
    }
    result.report.loss_history.push_back(epoch_loss / static_cast<double>(n));
  }

  if (!params.weights.back().allFinite()) {
    throw TrainingDiverged(cfg.epochs, "network parameters became non-finite");
  }
  result.report.final_train_accuracy = accuracy(params, train_data);
  result.report.final_test_accuracy = accuracy(params, test_data);
  return result;
}

}  // namespace basins::mlp
