#include "milnor/fields.hpp"

#include <cmath>
#include <limits>

#include "milnor/errors.hpp"
#include "numeric.hpp"

namespace milnor {

namespace {

void require_same_degree(const WeightSystem& ws, const char* what) {
  if (!ws.same_degree()) {
    throw PreconditionError(std::string(what) + " requires equal degrees b1 = b2 (got " + to_string(ws.degree_p()) +
                            " and " + to_string(ws.degree_q()) + ")");
  }
}

IdentityCertificate make_certificate(Identity id, Polynomial residual) {
  const bool holds = residual.is_zero();
  return {id, std::move(residual), holds};
}

}  // namespace

std::string_view identity_name(Identity id) {
  switch (id) {
    case Identity::Lemma_L1: return "Lemma_L1";
    case Identity::Condition_B: return "Condition_B";
    case Identity::Euler_P: return "Euler_P";
    case Identity::Euler_Q: return "Euler_Q";
  }
  return "unknown";
}

PolyVectorField omega(const MapGerm& germ) {
  return germ.P() * gradient(germ.Q()) - germ.Q() * gradient(germ.P());
}

PolyVectorField grad_norm_sq(const MapGerm& germ) {
  return Rational(2) * (germ.P() * gradient(germ.P()) + germ.Q() * gradient(germ.Q()));
}

IdentityCertificate lemma1_residual(const MapGerm& germ, const WeightSystem& ws) {
  require_same_degree(ws, "Lemma_L1");
  return make_certificate(Identity::Lemma_L1, dot(omega(germ), euler_field(ws)));
}

IdentityCertificate condition_b_residual(const MapGerm& germ, const WeightSystem& ws) {
  require_same_degree(ws, "Condition_B");
  const Polynomial norm_sq = germ.P() * germ.P() + germ.Q() * germ.Q();
  Polynomial residual = dot(grad_norm_sq(germ), euler_field(ws)) - Rational(2 * ws.degree_p()) * norm_sq;
  return make_certificate(Identity::Condition_B, std::move(residual));
}

IdentityCertificate euler_certificate(const MapGerm& germ, const WeightSystem& ws, Component which) {
  if (which == Component::P) {
    return make_certificate(Identity::Euler_P, euler_residual(germ.P(), ws, ws.degree_p()));
  }
  return make_certificate(Identity::Euler_Q, euler_residual(germ.Q(), ws, ws.degree_q()));
}

std::vector<IdentityCertificate> certify_identities(const MapGerm& germ, const WeightSystem& ws) {
  std::vector<IdentityCertificate> out;
  out.push_back(euler_certificate(germ, ws, Component::P));
  out.push_back(euler_certificate(germ, ws, Component::Q));
  if (ws.same_degree()) {
    out.push_back(lemma1_residual(germ, ws));
    out.push_back(condition_b_residual(germ, ws));
  }
  return out;
}

RankSampleReport df_min_singular_sample(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                                        double off_variety_tolerance) {
  if (n == 0) throw PreconditionError("rank sampling needs at least one sample");
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const detail::NumericGerm num(germ);
  const double floor = off_variety_tolerance * std::pow(epsilon, num.order());

  RankSampleReport report;
  report.epsilon = epsilon;
  report.num_samples = n;
  report.off_variety_tolerance = off_variety_tolerance;
  report.min_sigma = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = stream_rng(seed, i);
    const Eigen::VectorXd x = detail::to_eigen(uniform_sphere_point(rng, germ.num_vars(), epsilon));
    if (num.f(x).norm() < floor) {
      ++report.num_discarded;
      continue;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(num.df(x));
    const double sigma = svd.singularValues()(1);
    if (sigma < report.min_sigma) {
      report.min_sigma = sigma;
      report.worst_point = detail::to_point(x);
    }
  }
  if (report.num_discarded == n) {
    throw DegenerateSampleError("all " + std::to_string(n) + " sphere samples fell within tolerance of V");
  }
  return report;
}

}  // namespace milnor
