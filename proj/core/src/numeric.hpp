#pragma once

// Floating-point views of exact polynomials for the iterative solvers.
// Private to the core library.

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "milnor/polynomial.hpp"
#include "milnor/sampling.hpp"

namespace milnor::detail {

class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  double operator()(const double* x) const;
  double operator()(const Eigen::VectorXd& x) const { return (*this)(x.data()); }

 private:
  struct Term {
    double coeff;
    Monomial exponents;
  };
  std::vector<Term> terms_;
};

// m-component field with its Jacobian.
class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const PolyVectorField& field);

  Eigen::VectorXd value(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  std::size_t size() const { return comps_.size(); }

 private:
  std::vector<CompiledPolynomial> comps_;
  std::vector<std::vector<CompiledPolynomial>> partials_;
};

class NumericGerm {
 public:
  explicit NumericGerm(const MapGerm& germ);

  std::size_t dim() const { return dim_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t omega_degree() const { return omega_degree_; }

  Eigen::Vector2d f(const Eigen::VectorXd& x) const;
  // Rows are grad P and grad Q.
  Eigen::MatrixXd df(const Eigen::VectorXd& x) const;
  Eigen::VectorXd omega(const Eigen::VectorXd& x) const { return omega_.value(x); }
  Eigen::MatrixXd omega_jacobian(const Eigen::VectorXd& x) const { return omega_.jacobian(x); }

 private:
  std::size_t dim_;
  std::uint32_t order_;
  std::uint32_t omega_degree_;
  CompiledPolynomial p_, q_;
  CompiledField grad_p_, grad_q_, omega_;
};

inline Eigen::VectorXd to_eigen(std::span<const double> x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
}

inline Point to_point(const Eigen::VectorXd& x) { return Point(x.data(), x.data() + x.size()); }

// Minimum-norm least-squares solution of J d = r, truncating singular
// values below rel_cutoff * sigma_max.
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& jac, const Eigen::VectorXd& rhs, double rel_cutoff = 1e-12);

// Indices of the points that survive merging at Euclidean `radius`, in
// lexicographic point order. Within a cluster the lower-residual point wins;
// an empty `residuals` keeps the lexicographically first.
std::vector<std::size_t> dedup_order(const std::vector<Point>& points, const std::vector<double>& residuals,
                                     double radius);

}  // namespace milnor::detail
