#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "milnor/polynomial.hpp"
#include "milnor/sampling.hpp"
#include "milnor/weights.hpp"

namespace milnor {

// Flow of the Euler field e(x) = (w_1 x_1, ..., w_m x_m) in closed form:
// component i is x_i exp(w_i s).
Point euler_flow(std::span<const double> x, double s, const WeightSystem& ws);

// The unique s with |euler_flow(x, s)| = eps. |flow|^2 is strictly increasing
// in s, so the crossing is bracketed and then polished by safeguarded Newton
// to | |flow| - eps | <= 1e-12 eps. Throws PreconditionError for x = 0.
double time_to_sphere(std::span<const double> x, double epsilon, const WeightSystem& ws);

// h(x) = euler_flow(x, time_to_sphere(x)): pushes a tube point to the
// eps-sphere along the Euler flow, keeping f/|f| fixed. Throws
// PreconditionError for x = 0 and SingularityError for x on V.
Point tube_to_sphere(const MapGerm& germ, std::span<const double> x, double epsilon, const WeightSystem& ws);

struct TubePoint {
  Point x;
  std::array<double, 2> f_value{};
  bool within_ball = false;
};

struct FiberOptions {
  // eta must not exceed max_eta_ratio * eps (encodes 0 < eta << eps).
  double max_eta_ratio = 0.1;
  int max_iterations = 50;
  // Accepted level-set residual, relative to eta (tube) or angular (sphere).
  double accept_tolerance = 1e-10;
  double merge_radius = 1e-6;  // relative to eps
};

// Points of the tube fiber f^{-1}(eta (cos theta, sin theta)) inside the
// closed eps-ball, found by minimum-norm Newton from n seeded starts drawn
// uniformly in the ball. Throws PreconditionError when eta is too large and
// EmptyFiberError when no start converges.
std::vector<TubePoint> tube_fiber_sample(const MapGerm& germ, double epsilon, double eta, double theta,
                                         std::size_t n, std::uint64_t seed, const FiberOptions& options = {});

// Points of the eps-sphere with f/|f| = (cos theta, sin theta), off the link.
std::vector<Point> sphere_fiber_sample(const MapGerm& germ, double epsilon, double theta, std::size_t n,
                                       std::uint64_t seed, const FiberOptions& options = {});

struct EquivalenceReport {
  double epsilon = 0.0;
  double eta = 0.0;
  std::size_t num_samples = 0;
  double max_angular_deviation = 0.0;  // radians
  double max_sphere_residual = 0.0;
  double max_flow_time = 0.0;
  double min_flow_time = 0.0;
  std::size_t injectivity_violations = 0;
  bool verdict = false;
};

inline constexpr double kMaxAngularDeviation = 1e-8;
inline constexpr double kMaxSphereResidual = 1e-10;  // relative to eps

// Samples tube points across fiber angles, maps them with tube_to_sphere and
// checks that the square f = (f/|f|) o h commutes (angular deviation), that
// images land on the sphere, and that distinct samples have distinct images.
// Requires ws to certify both P and Q with b1 = b2.
EquivalenceReport equivalence_report(const MapGerm& germ, const WeightSystem& ws, double epsilon, double eta,
                                     std::size_t n, std::uint64_t seed, const FiberOptions& options = {});

// Infers a same-degree weight system first; PreconditionError if none exists.
EquivalenceReport equivalence_report(const MapGerm& germ, double epsilon, double eta, std::size_t n,
                                     std::uint64_t seed, const FiberOptions& options = {});

}  // namespace milnor
