#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "milnor/polynomial.hpp"
#include "milnor/sampling.hpp"
#include "milnor/weights.hpp"

namespace milnor {

enum class Identity { Lemma_L1, Condition_B, Euler_P, Euler_Q };

std::string_view identity_name(Identity id);

// An exact identity check: `holds` iff the residual is the zero polynomial.
struct IdentityCertificate {
  Identity name;
  Polynomial residual;
  bool holds;
};

// omega = P grad Q - Q grad P.
PolyVectorField omega(const MapGerm& germ);

// grad |f|^2 = 2 (P grad P + Q grad Q).
PolyVectorField grad_norm_sq(const MapGerm& germ);

// <omega, e>. Requires b1 == b2 (PreconditionError otherwise).
IdentityCertificate lemma1_residual(const MapGerm& germ, const WeightSystem& ws);

// <grad |f|^2, e> - 2b (P^2 + Q^2). Requires b1 == b2. Since P^2 + Q^2 > 0
// off V, a zero residual makes the Euler field strictly increase |f|.
IdentityCertificate condition_b_residual(const MapGerm& germ, const WeightSystem& ws);

IdentityCertificate euler_certificate(const MapGerm& germ, const WeightSystem& ws, Component which);

// Euler_P, Euler_Q, and (when b1 == b2) Lemma_L1 and Condition_B.
std::vector<IdentityCertificate> certify_identities(const MapGerm& germ, const WeightSystem& ws);

// Sampled evidence (not proof) that Df has full rank 2 near the origin.
struct RankSampleReport {
  double epsilon = 0.0;
  std::size_t num_samples = 0;    // samples drawn
  std::size_t num_discarded = 0;  // samples within the off-variety tolerance of V
  double min_sigma = 0.0;
  Point worst_point;
  double off_variety_tolerance = 0.0;
};

inline constexpr double kDefaultOffVarietyTolerance = 1e-8;

// Samples n seeded points uniformly on the eps-sphere, drops those with
// |f| < tol * eps^order, and records the smallest singular value of the
// 2 x m Jacobian Df. Throws DegenerateSampleError when nothing survives.
RankSampleReport df_min_singular_sample(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                                        double off_variety_tolerance = kDefaultOffVarietyTolerance);

}  // namespace milnor
