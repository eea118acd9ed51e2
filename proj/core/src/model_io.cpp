#include <stdexcept>

#include "basins/json_io.hpp"
#include "basins/mlp.hpp"

namespace basins::mlp {

std::string model_to_json(const NetworkParams& params, const ModelProvenance& prov) {
  params.validate();
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    const auto& w = params.weights[l];
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      for (Eigen::Index k = 0; k < w.cols(); ++k) flat.push_back(w(i, k));
    const auto& b = params.biases[l];
    layers.push_back({{"rows", w.rows()},
                      {"cols", w.cols()},
                      {"weights", flat},
                      {"biases", std::vector<double>(b.data(), b.data() + b.size())}});
  }
  nlohmann::json j = {{"format_version", kModelFormatVersion},
                      {"arch", params.arch},
                      {"input_scale", params.input_scale},
                      {"layers", layers},
                      {"provenance", {{"train", prov.train}, {"r", prov.r}, {"dataset", prov.dataset}}}};
  return j.dump(2) + "\n";
}

NetworkParams model_from_json(const std::string& text, ModelProvenance* prov) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format_version", std::string{}) != kModelFormatVersion) {
      throw std::runtime_error("unsupported model format version");
    }
    NetworkParams p;
    j.at("arch").get_to(p.arch);
    p.input_scale = j.at("input_scale").get<double>();
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != p.arch.num_layers()) {
      throw std::runtime_error("model has " + std::to_string(layers.size()) +
                               " layers but its architecture declares " +
                               std::to_string(p.arch.num_layers()));
    }
    for (const auto& layer : layers) {
      const auto rows = layer.at("rows").get<Eigen::Index>();
      const auto cols = layer.at("cols").get<Eigen::Index>();
      const auto flat = layer.at("weights").get<std::vector<double>>();
      const auto bias = layer.at("biases").get<std::vector<double>>();
      if (rows < 1 || cols < 1 || static_cast<Eigen::Index>(flat.size()) != rows * cols ||
          static_cast<Eigen::Index>(bias.size()) != rows) {
        throw std::runtime_error("layer array sizes disagree with rows/cols");
      }
      Eigen::MatrixXd w(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) w(i, k) = flat[static_cast<std::size_t>(i * cols + k)];
      p.weights.push_back(std::move(w));
      p.biases.push_back(Eigen::Map<const Eigen::VectorXd>(bias.data(), rows));
    }
    p.validate();
    if (prov) {
      *prov = ModelProvenance{};
      if (const auto it = j.find("provenance"); it != j.end()) {
        if (it->contains("train")) it->at("train").get_to(prov->train);
        prov->r = it->value("r", 0.0);
        prov->dataset = it->value("dataset", std::string{});
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("model/architecture mismatch: ") + e.what());
  }
}

}  // namespace basins::mlp
