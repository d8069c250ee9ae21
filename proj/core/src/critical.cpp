#include "milnor/critical.hpp"

#include <cmath>
#include <limits>

#include "milnor/errors.hpp"
#include "numeric.hpp"

namespace milnor {

namespace {

constexpr double kMaxStepFraction = 0.5;

Eigen::VectorXd tangential_omega(const Eigen::VectorXd& w, const Eigen::VectorXd& x) {
  return w - (w.dot(x) / x.squaredNorm()) * x;
}

// Projects y back onto the sphere of radius eps.
Eigen::VectorXd retract(const Eigen::VectorXd& y, double eps) { return y * (eps / y.norm()); }

Eigen::VectorXd clamp_step(Eigen::VectorXd step, double max_len) {
  const double len = step.norm();
  if (len > max_len) step *= max_len / len;
  return step;
}

}  // namespace

Polynomial parallel_residual(const MapGerm& germ) {
  return parallel_residual(germ, germ.num_vars() == 2 ? ParallelForm::Tangential : ParallelForm::Gram);
}

Polynomial parallel_residual(const MapGerm& germ, ParallelForm form) {
  const PolyVectorField w = omega(germ);
  const std::size_t m = germ.num_vars();
  if (form == ParallelForm::Tangential) {
    if (m != 2) throw ContractError("tangential parallel residual is defined for two variables only");
    const Polynomial x = Polynomial::variable(2, 0);
    const Polynomial y = Polynomial::variable(2, 1);
    return w[1] * x - w[0] * y;
  }
  const PolyVectorField pos = position_field(m);
  const Polynomial wx = dot(w, pos);
  return dot(w, w) * dot(pos, pos) - wx * wx;
}

ProjectionJacobian projection_jacobian(const MapGerm& germ, std::span<const double> x, double on_v_tolerance) {
  if (x.size() != germ.num_vars()) throw ContractError("projection_jacobian: point dimension mismatch");
  const detail::NumericGerm num(germ);
  const Eigen::VectorXd xv = detail::to_eigen(x);
  const Eigen::Vector2d fx = num.f(xv);
  const double fn = fx.norm();
  if (fn <= on_v_tolerance) throw SingularityError("projection_jacobian: point lies on V (|f| = 0)");
  const Eigen::VectorXd w = num.omega(xv);
  const double inv_cube = 1.0 / (fn * fn * fn);
  const Eigen::VectorXd row_p = (-fx(1) * inv_cube) * w;
  const Eigen::VectorXd row_q = (fx(0) * inv_cube) * w;
  return {detail::to_point(row_p), detail::to_point(row_q)};
}

double projection_submersion_sigma(const MapGerm& germ, std::span<const double> x, double on_v_tolerance) {
  const ProjectionJacobian jac = projection_jacobian(germ, x, on_v_tolerance);
  const std::size_t m = x.size();
  const Eigen::VectorXd xv = detail::to_eigen(x);
  const Eigen::MatrixXd tangent_proj =
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) -
      (xv * xv.transpose()) / xv.squaredNorm();
  Eigen::MatrixXd j(2, static_cast<Eigen::Index>(m));
  j.row(0) = detail::to_eigen(jac[0]).transpose();
  j.row(1) = detail::to_eigen(jac[1]).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j * tangent_proj);
  return svd.singularValues()(0);
}

RankSampleReport submersion_sample(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                                   double off_variety_tolerance) {
  if (n == 0) throw PreconditionError("submersion sampling needs at least one sample");
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
    const Point x = uniform_sphere_point(rng, germ.num_vars(), epsilon);
    if (num.f(detail::to_eigen(x)).norm() < floor) {
      ++report.num_discarded;
      continue;
    }
    const double sigma = projection_submersion_sigma(germ, x, 0.0);
    if (sigma < report.min_sigma) {
      report.min_sigma = sigma;
      report.worst_point = x;
    }
  }
  if (report.num_discarded == n) {
    throw DegenerateSampleError("all " + std::to_string(n) + " sphere samples fell within tolerance of V");
  }
  return report;
}

CriticalSetResult critical_points_on_sphere(const MapGerm& germ, double epsilon, std::size_t n_starts,
                                            std::uint64_t seed, const CriticalSearchOptions& options) {
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const detail::NumericGerm num(germ);
  const std::size_t m = germ.num_vars();
  const auto mi = static_cast<Eigen::Index>(m);
  const double omega_scale = std::pow(epsilon, num.omega_degree());
  const double f_floor = options.link_exclusion * std::pow(epsilon, num.order());

  CriticalSetResult result;
  result.epsilon = epsilon;
  result.multistart_count = n_starts;
  result.seed = seed;
  result.merge_radius = options.merge_radius * epsilon;

  std::vector<Point> found;
  std::vector<double> residuals;
  std::vector<bool> omega_zero;
  for (std::size_t s = 0; s < n_starts; ++s) {
    auto rng = stream_rng(seed, s);
    Eigen::VectorXd x = detail::to_eigen(uniform_sphere_point(rng, m, epsilon));
    bool converged = false;
    double scaled = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= options.max_iterations; ++it) {
      const Eigen::VectorXd w = num.omega(x);
      const Eigen::VectorXd r = tangential_omega(w, x);
      scaled = r.norm() / omega_scale;
      if (scaled <= options.residual_tolerance) {
        converged = true;
        break;
      }
      if (it == options.max_iterations || !std::isfinite(scaled)) break;
      // Jacobian of r = w - (<w,x>/|x|^2) x on the sphere |x| = eps.
      const Eigen::MatrixXd jw = num.omega_jacobian(x);
      const double xx = x.squaredNorm();
      const double wx = w.dot(x);
      const Eigen::VectorXd grad_wx = jw.transpose() * x + w;
      Eigen::MatrixXd a(mi + 1, mi);
      a.topRows(mi) = jw - (x * grad_wx.transpose()) / xx -
                      (wx / xx) * Eigen::MatrixXd::Identity(mi, mi) + (2.0 * wx / (xx * xx)) * (x * x.transpose());
      a.row(mi) = x.transpose() / epsilon;
      Eigen::VectorXd rhs(mi + 1);
      rhs.head(mi) = -r;
      rhs(mi) = 0.0;
      const Eigen::VectorXd step = detail::min_norm_solve(a, rhs);
      if (step.norm() == 0.0) break;
      x = retract(x + clamp_step(step, kMaxStepFraction * epsilon), epsilon);
    }
    if (!converged) continue;
    ++result.converged_count;
    if (num.f(x).norm() < f_floor) {
      ++result.near_link_count;
      continue;
    }
    found.push_back(detail::to_point(x));
    residuals.push_back(scaled);
    omega_zero.push_back(num.omega(x).norm() / omega_scale <= options.omega_zero_tolerance);
  }

  for (std::size_t idx : detail::dedup_order(found, residuals, result.merge_radius)) {
    result.points.push_back(found[idx]);
    result.residuals.push_back(residuals[idx]);
    result.omega_zero_flags.push_back(omega_zero[idx]);
  }
  return result;
}

LinkSample link_points(const MapGerm& germ, double epsilon, std::size_t n, std::uint64_t seed,
                       double link_tolerance) {
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const detail::NumericGerm num(germ);
  const std::size_t m = germ.num_vars();
  const auto mi = static_cast<Eigen::Index>(m);
  const double scale = std::pow(epsilon, num.order());
  const double accept = link_tolerance * scale;
  const double stop = 1e-3 * accept;
  constexpr int kMaxIterations = 50;

  LinkSample sample;
  sample.epsilon = epsilon;
  sample.multistart_count = n;
  sample.tolerance = accept;

  std::vector<Point> found;
  std::vector<double> norms;
  for (std::size_t s = 0; s < n; ++s) {
    auto rng = stream_rng(seed, s);
    Eigen::VectorXd x = detail::to_eigen(uniform_sphere_point(rng, m, epsilon));
    double fn = num.f(x).norm();
    for (int it = 0; it < kMaxIterations && fn > stop; ++it) {
      Eigen::MatrixXd a(3, mi);
      a.topRows(2) = num.df(x);
      a.row(2) = x.transpose() / epsilon;
      Eigen::VectorXd rhs(3);
      rhs.head(2) = -num.f(x);
      rhs(2) = 0.0;
      const Eigen::VectorXd step = detail::min_norm_solve(a, rhs);
      if (step.norm() == 0.0) break;
      x = retract(x + clamp_step(step, kMaxStepFraction * epsilon), epsilon);
      fn = num.f(x).norm();
    }
    if (fn <= accept) {
      found.push_back(detail::to_point(x));
      norms.push_back(fn);
    }
  }
  for (std::size_t idx : detail::dedup_order(found, norms, 1e-6 * epsilon)) {
    sample.points.push_back(found[idx]);
    sample.f_norms.push_back(norms[idx]);
  }
  return sample;
}

double example2_polar_radius(double theta) {
  const double c = std::cos(theta);
  return std::sin(theta) * c * c;
}

}  // namespace milnor
