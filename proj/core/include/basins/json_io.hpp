#pragma once

// nlohmann::json conversions for configuration and result types. Readers are
// lenient: absent keys keep the value already in the target, so a partial
// JSON document acts as an override on top of defaults.

#include <nlohmann/json.hpp>

#include "basins/boundary.hpp"
#include "basins/entropy.hpp"
#include "basins/fit.hpp"
#include "basins/mlp.hpp"
#include "basins/sweep.hpp"

namespace basins {

void to_json(nlohmann::json& j, const State3& s);
void from_json(const nlohmann::json& j, State3& s);
void to_json(nlohmann::json& j, const LorenzParams& p);
void from_json(const nlohmann::json& j, LorenzParams& p);
void to_json(nlohmann::json& j, const IntegratorConfig& c);
void from_json(const nlohmann::json& j, IntegratorConfig& c);
void to_json(nlohmann::json& j, const SamplingDomain& d);
void from_json(const nlohmann::json& j, SamplingDomain& d);
void to_json(nlohmann::json& j, const EntropyConfig& c);
void from_json(const nlohmann::json& j, EntropyConfig& c);
void to_json(nlohmann::json& j, const Range& r);
void from_json(const nlohmann::json& j, Range& r);
void to_json(nlohmann::json& j, const GridSpec2D& g);
void from_json(const nlohmann::json& j, GridSpec2D& g);
void to_json(nlohmann::json& j, const SphereSpec& s);
void from_json(const nlohmann::json& j, SphereSpec& s);
void to_json(nlohmann::json& j, const LatticeSpec3D& l);
void from_json(const nlohmann::json& j, LatticeSpec3D& l);
void to_json(nlohmann::json& j, const FitResult& f);
void to_json(nlohmann::json& j, const SweepRow& r);
void to_json(nlohmann::json& j, const BoxCounts& c);

namespace mlp {
void to_json(nlohmann::json& j, const NetworkArch& a);
void from_json(const nlohmann::json& j, NetworkArch& a);
void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);
void to_json(nlohmann::json& j, const TrainReport& r);
void from_json(const nlohmann::json& j, TrainReport& r);
}  // namespace mlp

}  // namespace basins
