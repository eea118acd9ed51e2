#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "basins/labeling.hpp"
#include "basins/mlp.hpp"

namespace basins {

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

/// Rectangular lattice on the plane z = `plane`. Points are ordered
/// row-major: y is the slow index, x the fast one.
struct GridSpec2D {
  double plane = 5.0;
  Range x_range{-20.0, 20.0};
  Range y_range{-20.0, 20.0};
  std::size_t nx = 100;
  std::size_t ny = 100;

  void validate() const;
  std::size_t size() const { return nx * ny; }
  State3 point(std::size_t ix, std::size_t iy) const;
};

/// (theta, phi) lattice on a sphere; theta spans [0, pi] inclusive and phi
/// spans [0, 2 pi) exclusive. theta is the slow index.
struct SphereSpec {
  double radius = 30.0;
  State3 center{0.0, 0.0, 11.0};
  std::size_t n_theta = 200;
  std::size_t n_phi = 400;

  void validate() const;
  std::size_t size() const { return n_theta * n_phi; }
  double theta(std::size_t i) const;
  double phi(std::size_t j) const;
  State3 point(std::size_t i, std::size_t j) const;
};

/// Sphere centered midway between C+ and C-, i.e. at (0, 0, r - 1).
SphereSpec default_sphere(const LorenzParams& p);

/// Lattice points with their predicted probabilities and classes.
struct ProbField {
  std::vector<State3> points;
  std::vector<double> probs;
  std::vector<int> classes;
};

struct LatticeSpec3D {
  SamplingDomain volume;
  std::size_t nx = 60;
  std::size_t ny = 60;
  std::size_t nz = 60;

  void validate() const;
  std::size_t size() const { return nx * ny * nz; }
  State3 spacing() const;
  /// z slowest, x fastest.
  State3 point(std::size_t ix, std::size_t iy, std::size_t iz) const;
};

struct BoundaryPoint {
  State3 point;
  double prob = 0.5;
  std::size_t lattice_index = 0;
};

/// Evaluates the classifier on every point, in order. Chunks are a fixed size,
/// so the output is identical for any worker count.
ProbField evaluate_points(const mlp::NetworkParams& net, std::vector<State3> points,
                          unsigned workers = kAutoWorkers);

ProbField evaluate_slice(const mlp::NetworkParams& net, const GridSpec2D& spec,
                         unsigned workers = kAutoWorkers);
ProbField evaluate_sphere(const mlp::NetworkParams& net, const SphereSpec& spec,
                          unsigned workers = kAutoWorkers);
/// Every lattice point, z-slowest, for volumetric reconstructions.
ProbField evaluate_volume(const mlp::NetworkParams& net, const LatticeSpec3D& spec,
                          unsigned workers = kAutoWorkers);

/// Lattice points whose probability lies strictly inside (band.lo, band.hi).
/// Requires band.lo < 0.5 < band.hi. An empty result is valid.
std::vector<BoundaryPoint> extract_boundary(const mlp::NetworkParams& net,
                                            const LatticeSpec3D& lattice,
                                            Range band = {0.4, 0.6},
                                            unsigned workers = kAutoWorkers);

/// Direct-integration labels on the slice lattice: 0, 1, or -1 for undecided.
std::vector<int> ground_truth_slice(const LorenzParams& p, const GridSpec2D& spec,
                                    const IntegratorConfig& cfg, unsigned workers = kAutoWorkers);

struct GridAccuracy {
  double accuracy = 0.0;
  std::size_t compared = 0;
  std::size_t undecided = 0;
};

/// Agreement between predicted classes and ground truth, skipping undecided cells.
GridAccuracy grid_accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// CSV writers ------------------------------------------------------------------

/// x,y,z,prob,class[,truth]
std::string slice_to_csv(const ProbField& field, const std::vector<int>* truth = nullptr);
/// theta,phi,x,y,z,prob,class
std::string sphere_to_csv(const ProbField& field, const SphereSpec& spec);
/// x,y,z,prob
std::string boundary_to_csv(const std::vector<BoundaryPoint>& points);

}  // namespace basins
