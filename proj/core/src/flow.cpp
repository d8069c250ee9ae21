#include "milnor/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "milnor/critical.hpp"
#include "milnor/errors.hpp"
#include "numeric.hpp"

namespace milnor {

namespace {

// psi(s) = log |flow(x, s)| via log-sum-exp, and its derivative.
struct LogNorm {
  std::vector<double> log_sq;  // 2 log |x_i| for nonzero x_i
  std::vector<double> weights;

  std::pair<double, double> operator()(double s) const {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < log_sq.size(); ++i) top = std::max(top, log_sq[i] + 2 * weights[i] * s);
    double sum = 0.0;
    double dsum = 0.0;
    for (std::size_t i = 0; i < log_sq.size(); ++i) {
      const double t = std::exp(log_sq[i] + 2 * weights[i] * s - top);
      sum += t;
      dsum += weights[i] * t;
    }
    return {0.5 * (top + std::log(sum)), dsum / sum};
  }
};

void check_eta(double epsilon, double eta, const FiberOptions& options) {
  if (!(epsilon > 0) || !(eta > 0)) throw PreconditionError("epsilon and eta must be positive");
  if (eta > options.max_eta_ratio * epsilon) {
    throw PreconditionError("eta must satisfy eta <= " + std::to_string(options.max_eta_ratio) + " * epsilon");
  }
}

}  // namespace

Point euler_flow(std::span<const double> x, double s, const WeightSystem& ws) {
  if (x.size() != ws.num_vars()) throw ContractError("euler_flow: dimension mismatch");
  const auto w = ws.weights_as_double();
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * std::exp(w[i] * s);
  return out;
}

double time_to_sphere(std::span<const double> x, double epsilon, const WeightSystem& ws) {
  if (x.size() != ws.num_vars()) throw ContractError("time_to_sphere: dimension mismatch");
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const auto w = ws.weights_as_double();
  LogNorm psi;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    psi.log_sq.push_back(2 * std::log(std::abs(x[i])));
    psi.weights.push_back(w[i]);
  }
  if (psi.log_sq.empty()) throw PreconditionError("time_to_sphere: x = 0 never reaches the sphere");

  const double target = std::log(epsilon);
  const double g0 = psi(0.0).first - target;
  if (g0 == 0.0) return 0.0;
  // psi' lies in [w_min, w_max], which brackets the root.
  const auto [wmin, wmax] = std::minmax_element(psi.weights.begin(), psi.weights.end());
  double lo = std::min(-g0 / *wmin, -g0 / *wmax);
  double hi = std::max(-g0 / *wmin, -g0 / *wmax);
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const auto [val, slope] = psi(s);
    const double g = val - target;
    if (g > 0) hi = s;
    else lo = s;
    if (std::abs(g) <= 1e-15 || hi - lo <= 1e-16 * std::max(1.0, std::abs(s))) break;
    double next = s - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  // Polish against the directly computed norm.
  for (int it = 0; it < 3; ++it) {
    const Point y = euler_flow(x, s, ws);
    const double r = norm(y);
    if (std::abs(r - epsilon) <= 1e-14 * epsilon) break;
    s -= std::log(r / epsilon) / psi(s).second;
  }
  return s;
}

Point tube_to_sphere(const MapGerm& germ, std::span<const double> x, double epsilon, const WeightSystem& ws) {
  if (norm(x) == 0.0) throw PreconditionError("tube_to_sphere: x = 0");
  const detail::NumericGerm num(germ);
  if (num.f(detail::to_eigen(x)).norm() <= kOnVarietyTolerance) {
    throw SingularityError("tube_to_sphere: x lies on V");
  }
  return euler_flow(x, time_to_sphere(x, epsilon, ws), ws);
}

std::vector<TubePoint> tube_fiber_sample(const MapGerm& germ, double epsilon, double eta, double theta,
                                         std::size_t n, std::uint64_t seed, const FiberOptions& options) {
  check_eta(epsilon, eta, options);
  const detail::NumericGerm num(germ);
  const std::size_t m = germ.num_vars();
  const Eigen::Vector2d target(eta * std::cos(theta), eta * std::sin(theta));
  const double stop = 1e-3 * options.accept_tolerance * eta;

  std::vector<Point> found;
  std::vector<double> residuals;
  for (std::size_t s = 0; s < n; ++s) {
    auto rng = stream_rng(seed, s);
    Eigen::VectorXd x = detail::to_eigen(uniform_ball_point(rng, m, epsilon));
    double res = (num.f(x) - target).norm();
    for (int it = 0; it < options.max_iterations && res > stop; ++it) {
      const Eigen::VectorXd step = detail::min_norm_solve(num.df(x), target - num.f(x));
      if (step.norm() == 0.0) break;
      const double max_len = 0.5 * epsilon;
      x += step.norm() > max_len ? Eigen::VectorXd(step * (max_len / step.norm())) : step;
      res = (num.f(x) - target).norm();
    }
    if (res <= options.accept_tolerance * eta && x.norm() <= epsilon) {
      found.push_back(detail::to_point(x));
      residuals.push_back(res);
    }
  }
  if (found.empty()) {
    throw EmptyFiberError("no tube fiber point converged for theta = " + std::to_string(theta));
  }
  std::vector<TubePoint> out;
  for (std::size_t idx : detail::dedup_order(found, residuals, options.merge_radius * epsilon)) {
    const Eigen::Vector2d fx = num.f(detail::to_eigen(found[idx]));
    out.push_back({found[idx], {fx(0), fx(1)}, norm(found[idx]) <= epsilon});
  }
  return out;
}

std::vector<Point> sphere_fiber_sample(const MapGerm& germ, double epsilon, double theta, std::size_t n,
                                       std::uint64_t seed, const FiberOptions& options) {
  if (!(epsilon > 0)) throw PreconditionError("epsilon must be positive");
  const detail::NumericGerm num(germ);
  const std::size_t m = germ.num_vars();
  const auto mi = static_cast<Eigen::Index>(m);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double link_floor = kLinkTolerance * std::pow(epsilon, num.order());

  std::vector<Point> found;
  std::vector<double> residuals;
  for (std::size_t s = 0; s < n; ++s) {
    auto rng = stream_rng(seed, s);
    Eigen::VectorXd x = detail::to_eigen(uniform_sphere_point(rng, m, epsilon));
    double angle = 0.0;
    for (int it = 0; it <= options.max_iterations; ++it) {
      const Eigen::Vector2d fx = num.f(x);
      const double across = -sn * fx(0) + c * fx(1);
      const double along = c * fx(0) + sn * fx(1);
      angle = std::atan2(across, along);
      if (std::abs(across) <= 1e-15 * fx.norm() || it == options.max_iterations) break;
      const Eigen::MatrixXd df = num.df(x);
      Eigen::MatrixXd a(2, mi);
      a.row(0) = -sn * df.row(0) + c * df.row(1);
      a.row(1) = x.transpose() / epsilon;
      const Eigen::VectorXd step = detail::min_norm_solve(a, Eigen::Vector2d(-across, 0.0));
      if (step.norm() == 0.0) break;
      const double max_len = 0.5 * epsilon;
      const Eigen::VectorXd y = x + (step.norm() > max_len ? Eigen::VectorXd(step * (max_len / step.norm())) : step);
      x = y * (epsilon / y.norm());
    }
    if (std::abs(angle) <= options.accept_tolerance && num.f(x).norm() > link_floor) {
      found.push_back(detail::to_point(x));
      residuals.push_back(std::abs(angle));
    }
  }
  std::vector<Point> out;
  for (std::size_t idx : detail::dedup_order(found, residuals, options.merge_radius * epsilon)) {
    out.push_back(found[idx]);
  }
  return out;
}

EquivalenceReport equivalence_report(const MapGerm& germ, const WeightSystem& ws, double epsilon, double eta,
                                     std::size_t n, std::uint64_t seed, const FiberOptions& options) {
  if (ws.num_vars() != germ.num_vars()) throw ContractError("equivalence_report: weight count mismatch");
  if (!verify_qh(germ.P(), ws, Component::P) || !verify_qh(germ.Q(), ws, Component::Q)) {
    throw PreconditionError("germ is not quasi-homogeneous for the given weight system");
  }
  if (!ws.same_degree()) throw PreconditionError("flow equivalence requires equal degrees b1 = b2");
  check_eta(epsilon, eta, options);
  if (n == 0) throw PreconditionError("equivalence_report needs at least one sample");

  const detail::NumericGerm num(germ);
  constexpr std::size_t kPointsPerFiber = 2;
  constexpr std::size_t kStartsPerFiber = 8;
  const std::size_t n_angles = (n + kPointsPerFiber - 1) / kPointsPerFiber;

  std::vector<Point> sources;
  for (std::size_t k = 0; k < n_angles && sources.size() < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_angles);
    const std::uint64_t fiber_seed = stream_rng(seed, k)();
    try {
      const auto fiber = tube_fiber_sample(germ, epsilon, eta, theta, kStartsPerFiber, fiber_seed, options);
      for (std::size_t i = 0; i < fiber.size() && i < kPointsPerFiber && sources.size() < n; ++i) {
        sources.push_back(fiber[i].x);
      }
    } catch (const EmptyFiberError&) {
      continue;
    }
  }
  if (sources.empty()) throw DegenerateSampleError("no tube points could be sampled");

  EquivalenceReport report;
  report.epsilon = epsilon;
  report.eta = eta;
  report.num_samples = sources.size();
  report.min_flow_time = std::numeric_limits<double>::infinity();
  std::vector<Point> images;
  for (const Point& x : sources) {
    const double s = time_to_sphere(x, epsilon, ws);
    Point y = euler_flow(x, s, ws);
    const Eigen::Vector2d fx = num.f(detail::to_eigen(x));
    const Eigen::Vector2d fy = num.f(detail::to_eigen(y));
    report.max_angular_deviation =
        std::max(report.max_angular_deviation, angle_between(fx(0), fx(1), fy(0), fy(1)));
    report.max_sphere_residual = std::max(report.max_sphere_residual, std::abs(norm(y) - epsilon));
    report.max_flow_time = std::max(report.max_flow_time, s);
    report.min_flow_time = std::min(report.min_flow_time, s);
    images.push_back(std::move(y));
  }
  const double source_sep = options.merge_radius * epsilon;
  const double image_sep = 1e-9 * epsilon;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = i + 1; j < sources.size(); ++j) {
      if (distance(sources[i], sources[j]) > source_sep && distance(images[i], images[j]) <= image_sep) {
        ++report.injectivity_violations;
      }
    }
  }
  report.verdict = report.max_angular_deviation <= kMaxAngularDeviation &&
                   report.max_sphere_residual <= kMaxSphereResidual * epsilon && report.injectivity_violations == 0;
  return report;
}

EquivalenceReport equivalence_report(const MapGerm& germ, double epsilon, double eta, std::size_t n,
                                     std::uint64_t seed, const FiberOptions& options) {
  const QHVerdict verdict = infer_weights(germ, /*require_same_degree=*/true);
  if (!verdict.quasi_homogeneous()) {
    throw PreconditionError("germ is not quasi-homogeneous with equal degrees: " + verdict.reason);
  }
  return equivalence_report(germ, *verdict.weights, epsilon, eta, n, seed, options);
}

}  // namespace milnor
