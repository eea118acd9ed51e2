#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "basins/labeling.hpp"
#include "basins/state.hpp"

namespace basins::mlp {

enum class Activation { Relu, Tanh, Logistic };

std::string_view to_string(Activation a);
/// Accepts "relu", "tanh", "logistic"; throws std::invalid_argument otherwise.
Activation activation_from_string(std::string_view s);

/// Layer widths from input (3) to output (1); the output unit is always logistic.
struct NetworkArch {
  std::vector<int> layer_sizes{3, 64, 64, 32, 1};
  Activation hidden_activation = Activation::Relu;

  void validate() const;
  std::size_t num_layers() const { return layer_sizes.size() - 1; }
};

/// Default divisor applied to raw coordinates before the first layer.
inline constexpr double kDefaultInputScale = 50.0;

struct NetworkParams {
  NetworkArch arch;
  std::vector<Eigen::MatrixXd> weights;  ///< layer l: fan_out x fan_in
  std::vector<Eigen::VectorXd> biases;
  double input_scale = kDefaultInputScale;

  /// Throws std::invalid_argument if shapes do not chain or entries are non-finite.
  void validate() const;
  std::size_t parameter_count() const;
};

/// Per-layer gradients, shaped like NetworkParams.
struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

enum class Optimizer { Sgd, Adam };

std::string_view to_string(Optimizer o);
Optimizer optimizer_from_string(std::string_view s);

struct TrainConfig {
  Optimizer optimizer = Optimizer::Adam;
  double learning_rate = 1e-3;
  std::size_t batch_size = 256;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double prob_clip = 1e-7;

  void validate() const;
};

struct TrainReport {
  std::vector<double> loss_history;
  double final_train_accuracy = 0.0;
  double final_test_accuracy = 0.0;
};

/// Raised when the training loss stops being finite.
class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(std::size_t epoch, const std::string& what)
      : std::runtime_error(what), epoch_(epoch) {}
  std::size_t epoch() const { return epoch_; }

 private:
  std::size_t epoch_;
};

/// Glorot-uniform weights for tanh/logistic, He-normal for relu; zero biases.
NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed);

/// P(label = C+ | x).
double forward(const NetworkParams& params, const State3& x);
std::vector<double> forward_batch(const NetworkParams& params, std::span<const State3> xs);

/// Mean binary cross-entropy with p clamped to [prob_clip, 1 - prob_clip].
double bce_loss(std::span<const double> probs, std::span<const int> labels, double prob_clip);

/// Exact gradient of the batch's mean clamped cross-entropy. A prediction
/// sitting on a clamp edge contributes zero, as the clamp is flat there.
Gradients gradient(const NetworkParams& params, std::span<const LabeledSample> batch,
                   double prob_clip = 1e-7);

/// Mean clamped cross-entropy of params over batch (the function `gradient` differentiates).
double batch_loss(const NetworkParams& params, std::span<const LabeledSample> batch,
                  double prob_clip = 1e-7);

struct TrainResult {
  NetworkParams params;
  TrainReport report;
};

TrainResult train(std::span<const LabeledSample> train_data,
                  std::span<const LabeledSample> test_data, const NetworkArch& arch,
                  const TrainConfig& cfg);

/// 1 iff forward(params, x) >= threshold.
int predict_class(const NetworkParams& params, const State3& x, double threshold = 0.5);

double accuracy(const NetworkParams& params, std::span<const LabeledSample> data);

// Model files ----------------------------------------------------------------

inline constexpr const char* kModelFormatVersion = "basins-model/1";

/// Free-form provenance stored alongside the weights.
struct ModelProvenance {
  TrainConfig train;
  double r = 0.0;  ///< Lorenz r of the training data, 0 when unknown
  std::string dataset;
};

std::string model_to_json(const NetworkParams& params, const ModelProvenance& prov);
/// Throws std::runtime_error on a malformed file or an arch/weights mismatch.
NetworkParams model_from_json(const std::string& text, ModelProvenance* prov = nullptr);

}  // namespace basins::mlp
