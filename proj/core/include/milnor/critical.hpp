#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "milnor/fields.hpp"
#include "milnor/polynomial.hpp"
#include "milnor/sampling.hpp"

namespace milnor {

// Polynomial whose zeros on a sphere are the points where omega is parallel
// to the position vector (omega = 0 included).
enum class ParallelForm {
  // <omega, (-y, x)>; m = 2 only.
  Tangential,
  // |omega|^2 |x|^2 - <omega, x>^2, nonnegative by Cauchy-Schwarz.
  Gram,
};

// Tangential form for m = 2, Gram form otherwise.
Polynomial parallel_residual(const MapGerm& germ);
Polynomial parallel_residual(const MapGerm& germ, ParallelForm form);

// Jacobian of f/|f| at x from the closed form: rows (-Q/|f|^3) omega and
// (P/|f|^3) omega. Throws SingularityError when |f(x)| <= on_v_tolerance.
using ProjectionJacobian = std::array<std::vector<double>, 2>;
inline constexpr double kOnVarietyTolerance = 1e-14;
ProjectionJacobian projection_jacobian(const MapGerm& germ, std::span<const double> x,
                                       double on_v_tolerance = kOnVarietyTolerance);

// The single singular value of d(f/|f|) restricted to the tangent space of
// the sphere through x, i.e. of the map T_x S -> T S^1. Zero exactly at
// critical points of the projection.
double projection_submersion_sigma(const MapGerm& germ, std::span<const double> x,
                                   double on_v_tolerance = kOnVarietyTolerance);

// Minimum of projection_submersion_sigma over seeded sphere samples off V:
// numeric evidence that f/|f| is a submersion on S_eps minus K_eps.
RankSampleReport submersion_sample(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                                   double off_variety_tolerance = kDefaultOffVarietyTolerance);

struct CriticalSearchOptions {
  // Stop once |omega_perp| / eps^deg(omega) falls to this value.
  double residual_tolerance = 1e-12;
  int max_iterations = 50;
  // Converged points with |f| < link_exclusion * eps^order are link points.
  double link_exclusion = 1e-8;
  double merge_radius = 1e-6;  // relative to eps
  // Points with |omega| / eps^deg(omega) below this get omega_zero set.
  double omega_zero_tolerance = 1e-10;
};

struct CriticalSetResult {
  double epsilon = 0.0;
  std::vector<Point> points;
  std::vector<double> residuals;  // scaled |omega_perp|
  std::vector<bool> omega_zero_flags;
  std::size_t multistart_count = 0;
  std::size_t converged_count = 0;  // before link exclusion and merging
  std::size_t near_link_count = 0;
  std::uint64_t seed = 0;
  double merge_radius = 0.0;  // absolute
};

// Multistart projected Newton for omega parallel to x on the eps-sphere.
// Deterministic for a fixed seed; an empty result is a valid outcome.
CriticalSetResult critical_points_on_sphere(const MapGerm& germ, double epsilon, std::size_t n_starts,
                                            std::uint64_t seed, const CriticalSearchOptions& options = {});

struct LinkSample {
  double epsilon = 0.0;
  std::vector<Point> points;
  std::vector<double> f_norms;
  std::size_t multistart_count = 0;
  double tolerance = 0.0;  // absolute bound on |f| for accepted points
};

inline constexpr double kLinkTolerance = 1e-10;

// Seeded multistart Gauss-Newton minimization of |f|^2 on the eps-sphere;
// keeps points with |f| <= link_tolerance * eps^order.
LinkSample link_points(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                       double link_tolerance = kLinkTolerance);

// r = sin(theta) cos^2(theta): the polar form of the critical curve of the
// germ (x, x^2 + y (x^2 + y^2)).
double example2_polar_radius(double theta);

}  // namespace milnor
