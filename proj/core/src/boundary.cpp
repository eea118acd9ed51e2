#include "basins/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "basins/csv.hpp"

namespace basins {

namespace {

constexpr std::size_t kChunk = 4096;

double lerp_index(Range r, std::size_t i, std::size_t n) {
  if (i + 1 == n) return r.hi;
  return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

void check_range(Range r, const char* axis) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo < r.hi)) {
    throw std::invalid_argument(std::string(axis) + " range must be finite with lo < hi");
  }
}

}  // namespace

void GridSpec2D::validate() const {
  if (nx < 2 || ny < 2) throw std::invalid_argument("slice lattice needs nx, ny >= 2");
  check_range(x_range, "x");
  check_range(y_range, "y");
  if (!std::isfinite(plane)) throw std::invalid_argument("slice plane must be finite");
}

State3 GridSpec2D::point(std::size_t ix, std::size_t iy) const {
  return {lerp_index(x_range, ix, nx), lerp_index(y_range, iy, ny), plane};
}

void SphereSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("sphere radius must be positive");
  if (!is_finite(center)) throw std::invalid_argument("sphere center must be finite");
  if (n_theta < 2 || n_phi < 1) throw std::invalid_argument("sphere lattice needs n_theta >= 2, n_phi >= 1");
}

double SphereSpec::theta(std::size_t i) const {
  if (i + 1 == n_theta) return std::numbers::pi;
  return std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
}

double SphereSpec::phi(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
}

State3 SphereSpec::point(std::size_t i, std::size_t j) const {
  const double t = theta(i);
  const double f = phi(j);
  return center + radius * State3{std::sin(t) * std::cos(f), std::sin(t) * std::sin(f), std::cos(t)};
}

SphereSpec default_sphere(const LorenzParams& p) {
  SphereSpec s;
  s.center = {0.0, 0.0, p.r - 1.0};
  return s;
}

void LatticeSpec3D::validate() const {
  volume.validate();
  if (nx < 2 || ny < 2 || nz < 2) throw std::invalid_argument("volume lattice needs >= 2 points per axis");
}

State3 LatticeSpec3D::spacing() const {
  const State3 extent = volume.upper - volume.lower;
  return {extent.x / static_cast<double>(nx - 1), extent.y / static_cast<double>(ny - 1),
          extent.z / static_cast<double>(nz - 1)};
}

State3 LatticeSpec3D::point(std::size_t ix, std::size_t iy, std::size_t iz) const {
  return {lerp_index({volume.lower.x, volume.upper.x}, ix, nx),
          lerp_index({volume.lower.y, volume.upper.y}, iy, ny),
          lerp_index({volume.lower.z, volume.upper.z}, iz, nz)};
}

ProbField evaluate_points(const mlp::NetworkParams& net, std::vector<State3> points,
                          unsigned workers) {
  net.validate();
  ProbField field;
  field.points = std::move(points);
  const std::size_t n = field.points.size();
  field.probs.resize(n);
  field.classes.resize(n);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t count = std::min(kChunk, n - begin);
    const auto probs =
        mlp::forward_batch(net, std::span<const State3>(field.points).subspan(begin, count));
    for (std::size_t k = 0; k < count; ++k) {
      field.probs[begin + k] = probs[k];
      field.classes[begin + k] = probs[k] >= 0.5 ? 1 : 0;
    }
  });
  return field;
}

ProbField evaluate_slice(const mlp::NetworkParams& net, const GridSpec2D& spec, unsigned workers) {
  spec.validate();
  std::vector<State3> pts;
  pts.reserve(spec.size());
  for (std::size_t iy = 0; iy < spec.ny; ++iy)
    for (std::size_t ix = 0; ix < spec.nx; ++ix) pts.push_back(spec.point(ix, iy));
  return evaluate_points(net, std::move(pts), workers);
}

ProbField evaluate_sphere(const mlp::NetworkParams& net, const SphereSpec& spec, unsigned workers) {
  spec.validate();
  std::vector<State3> pts;
  pts.reserve(spec.size());
  for (std::size_t i = 0; i < spec.n_theta; ++i)
    for (std::size_t j = 0; j < spec.n_phi; ++j) pts.push_back(spec.point(i, j));
  return evaluate_points(net, std::move(pts), workers);
}

ProbField evaluate_volume(const mlp::NetworkParams& net, const LatticeSpec3D& spec,
                          unsigned workers) {
  spec.validate();
  std::vector<State3> pts;
  pts.reserve(spec.size());
  for (std::size_t iz = 0; iz < spec.nz; ++iz)
    for (std::size_t iy = 0; iy < spec.ny; ++iy)
      for (std::size_t ix = 0; ix < spec.nx; ++ix) pts.push_back(spec.point(ix, iy, iz));
  return evaluate_points(net, std::move(pts), workers);
}

std::vector<BoundaryPoint> extract_boundary(const mlp::NetworkParams& net,
                                            const LatticeSpec3D& lattice, Range band,
                                            unsigned workers) {
  if (!(band.lo < 0.5 && 0.5 < band.hi)) {
    throw std::invalid_argument("probability band must satisfy lo < 0.5 < hi");
  }
  const ProbField field = evaluate_volume(net, lattice, workers);
  std::vector<BoundaryPoint> out;
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const double p = field.probs[i];
    if (p > band.lo && p < band.hi) out.push_back({field.points[i], p, i});
  }
  return out;
}

std::vector<int> ground_truth_slice(const LorenzParams& p, const GridSpec2D& spec,
                                    const IntegratorConfig& cfg, unsigned workers) {
  p.validate_bistable();
  cfg.validate();
  spec.validate();
  std::vector<int> truth(spec.size());
  parallel_for(spec.size(), workers, [&](std::size_t k) {
    const State3 ic = spec.point(k % spec.nx, k / spec.nx);
    truth[k] = encode(label_initial_condition(p, ic, cfg).sample.label);
  });
  return truth;
}

GridAccuracy grid_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("grid sizes differ");
  GridAccuracy acc;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0) {
      ++acc.undecided;
      continue;
    }
    ++acc.compared;
    if (predicted[i] == truth[i]) ++agree;
  }
  acc.accuracy = acc.compared == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(acc.compared);
  return acc;
}

std::string slice_to_csv(const ProbField& field, const std::vector<int>* truth) {
  if (truth && truth->size() != field.points.size()) throw std::invalid_argument("truth grid size mismatch");
  std::ostringstream os;
  os << (truth ? "x,y,z,prob,class,truth\n" : "x,y,z,prob,class\n");
  for (std::size_t i = 0; i < field.points.size(); ++i) {
    const auto& s = field.points[i];
    os << csv::format_double(s.x) << ',' << csv::format_double(s.y) << ',' << csv::format_double(s.z)
       << ',' << csv::format_double(field.probs[i]) << ',' << field.classes[i];
    if (truth) os << ',' << (*truth)[i];
    os << '\n';
  }
  return os.str();
}

std::string sphere_to_csv(const ProbField& field, const SphereSpec& spec) {
  if (field.points.size() != spec.size()) throw std::invalid_argument("sphere field size mismatch");
  std::ostringstream os;
  os << "theta,phi,x,y,z,prob,class\n";
  for (std::size_t i = 0; i < spec.n_theta; ++i) {
    for (std::size_t j = 0; j < spec.n_phi; ++j) {
      const std::size_t k = i * spec.n_phi + j;
      const auto& s = field.points[k];
      os << csv::format_double(spec.theta(i)) << ',' << csv::format_double(spec.phi(j)) << ','
         << csv::format_double(s.x) << ',' << csv::format_double(s.y) << ','
         << csv::format_double(s.z) << ',' << csv::format_double(field.probs[k]) << ','
         << field.classes[k] << '\n';
    }
  }
  return os.str();
}

std::string boundary_to_csv(const std::vector<BoundaryPoint>& points) {
  std::ostringstream os;
  os << "x,y,z,prob\n";
  for (const auto& b : points) {
    os << csv::format_double(b.point.x) << ',' << csv::format_double(b.point.y) << ','
       << csv::format_double(b.point.z) << ',' << csv::format_double(b.prob) << '\n';
  }
  return os.str();
}

}  // namespace basins
