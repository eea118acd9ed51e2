#include "basins/entropy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "basins/csv.hpp"
#include "basins/rng.hpp"

namespace basins {

std::string_view to_string(LogBase b) { return b == LogBase::Two ? "2" : "natural"; }

LogBase log_base_from_string(std::string_view s) {
  if (s == "natural" || s == "e" || s == "ln") return LogBase::Natural;
  if (s == "2" || s == "two" || s == "bits") return LogBase::Two;
  throw std::invalid_argument("unknown log base '" + std::string(s) + "'");
}

void EntropyConfig::validate() const {
  if (n_boxes < 1) throw std::invalid_argument("n_boxes must be at least 1");
  if (trajs_per_box < 2) throw std::invalid_argument("trajs_per_box must be at least 2");
  domain.validate();
  const State3 extent = domain.upper - domain.lower;
  if (!(box_side > 0.0) || box_side > extent.x || box_side > extent.y || box_side > extent.z) {
    throw std::invalid_argument("box_side must be positive and fit inside the domain");
  }
}

double box_entropy(const BoxCounts& counts, LogBase base) {
  const std::size_t total = counts.decided();
  if (total == 0) throw std::invalid_argument("box has no decided orbits");
  double s = 0.0;
  for (std::size_t c : {counts.c_minus, counts.c_plus}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    s -= p * std::log(p);
  }
  return base == LogBase::Two ? s / std::numbers::ln2 : s;
}

EntropyResult basin_entropy(const EntropyConfig& cfg, const Labeler& label, unsigned workers) {
  cfg.validate();
  const double half = 0.5 * cfg.box_side;
  const SamplingDomain centers{cfg.domain.lower + State3{half, half, half},
                              cfg.domain.upper - State3{half, half, half}};

  EntropyResult out;
  out.boxes.resize(cfg.n_boxes);
  parallel_for(cfg.n_boxes, workers, [&](std::size_t i) {
    Rng rng = Rng::substream(cfg.seed, i);
    BoxResult& box = out.boxes[i];
    // Degenerate when box_side equals the domain extent on an axis.
    box.center = {
        centers.lower.x < centers.upper.x ? rng.uniform(centers.lower.x, centers.upper.x) : centers.lower.x,
        centers.lower.y < centers.upper.y ? rng.uniform(centers.lower.y, centers.upper.y) : centers.lower.y,
        centers.lower.z < centers.upper.z ? rng.uniform(centers.lower.z, centers.upper.z) : centers.lower.z};
    const State3 corner = box.center - State3{half, half, half};
    for (std::size_t k = 0; k < cfg.trajs_per_box; ++k) {
      const double ux = rng.uniform();
      const double uy = rng.uniform();
      const double uz = rng.uniform();
      const State3 ic = corner + cfg.box_side * State3{ux, uy, uz};
      switch (label(ic)) {
        case AttractorLabel::CMinus: ++box.counts.c_minus; break;
        case AttractorLabel::CPlus: ++box.counts.c_plus; break;
        default: ++box.counts.undecided; break;
      }
    }
    if (box.counts.decided() < 2) {
      box.flagged = true;
      box.entropy = 0.0;
    } else {
      box.entropy = box_entropy(box.counts, LogBase::Natural);
    }
  });

  // Averaged in nats and converted once, so the two bases differ by exactly 1/ln 2.
  double total = 0.0;
  for (const auto& b : out.boxes) {
    total += b.entropy;
    if (b.flagged) ++out.flagged_boxes;
  }
  out.basin_entropy = total / static_cast<double>(cfg.n_boxes);
  if (cfg.log_base == LogBase::Two) {
    out.basin_entropy /= std::numbers::ln2;
    for (auto& b : out.boxes) b.entropy /= std::numbers::ln2;
  }
  return out;
}

EntropyResult basin_entropy(const LorenzParams& p, const EntropyConfig& cfg,
                            const IntegratorConfig& integ, unsigned workers) {
  p.validate_bistable();
  integ.validate();
  const Labeler label = [&](const State3& ic) {
    return label_initial_condition(p, ic, integ).sample.label;
  };
  return basin_entropy(cfg, label, workers);
}

std::string boxes_to_csv(const std::vector<BoxResult>& boxes) {
  std::ostringstream os;
  os << "box_index,cx,cy,cz,n0,n1,n_undecided,entropy\n";
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    os << i << ',' << csv::format_double(b.center.x) << ',' << csv::format_double(b.center.y) << ','
       << csv::format_double(b.center.z) << ',' << b.counts.c_minus << ',' << b.counts.c_plus << ','
       << b.counts.undecided << ',' << csv::format_double(b.entropy) << '\n';
  }
  return os.str();
}

}  // namespace basins
