#include "numeric.hpp"

#include <algorithm>
#include <numeric>

#include "milnor/fields.hpp"

namespace milnor::detail {

namespace {

double ipow(double base, std::uint32_t e) {
  double result = 1.0;
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

}  // namespace

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  terms_.reserve(p.term_count());
  for (const auto& [mono, coeff] : p.terms()) terms_.push_back({to_double(coeff), mono});
}

double CompiledPolynomial::operator()(const double* x) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    double term = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] != 0) term *= ipow(x[i], t.exponents[i]);
    }
    sum += term;
  }
  return sum;
}

CompiledField::CompiledField(const PolyVectorField& field) {
  for (const auto& c : field.components) {
    comps_.emplace_back(c);
    std::vector<CompiledPolynomial> row;
    for (std::size_t j = 0; j < c.num_vars(); ++j) row.emplace_back(c.derivative(j));
    partials_.push_back(std::move(row));
  }
}

Eigen::VectorXd CompiledField::value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(comps_.size()));
  for (std::size_t i = 0; i < comps_.size(); ++i) out(static_cast<Eigen::Index>(i)) = comps_[i](x);
  return out;
}

Eigen::MatrixXd CompiledField::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(comps_.size()), x.size());
  for (std::size_t i = 0; i < partials_.size(); ++i) {
    for (std::size_t j = 0; j < partials_[i].size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = partials_[i][j](x);
    }
  }
  return out;
}

NumericGerm::NumericGerm(const MapGerm& germ)
    : dim_(germ.num_vars()),
      order_(germ.order()),
      p_(germ.P()),
      q_(germ.Q()),
      grad_p_(gradient(germ.P())),
      grad_q_(gradient(germ.Q())) {
  const PolyVectorField w = milnor::omega(germ);
  omega_degree_ = 0;
  for (const auto& c : w.components) omega_degree_ = std::max(omega_degree_, c.total_degree());
  omega_ = CompiledField(w);
}

Eigen::Vector2d NumericGerm::f(const Eigen::VectorXd& x) const { return {p_(x), q_(x)}; }

Eigen::MatrixXd NumericGerm::df(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd out(2, x.size());
  out.row(0) = grad_p_.value(x).transpose();
  out.row(1) = grad_q_.value(x).transpose();
  return out;
}

Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& jac, const Eigen::VectorXd& rhs, double rel_cutoff) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(jac.cols());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = rel_cutoff * s(0);
  const Eigen::VectorXd ut_r = svd.matrixU().transpose() * rhs;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) out += svd.matrixV().col(i) * (ut_r(i) / s(i));
  }
  return out;
}

std::vector<std::size_t> dedup_order(const std::vector<Point>& points, const std::vector<double>& residuals,
                                     double radius) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    auto near = std::find_if(kept.begin(), kept.end(),
                             [&](std::size_t k) { return distance(points[k], points[idx]) <= radius; });
    if (near == kept.end()) {
      kept.push_back(idx);
    } else if (!residuals.empty() && residuals[idx] < residuals[*near]) {
      *near = idx;
    }
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  return kept;
}

}  // namespace milnor::detail
