#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

// Weights (w_1, ..., w_m) together with the weighted degrees b1 of P and b2
// of Q. All entries are strictly positive.
class WeightSystem {
 public:
  // Throws PreconditionError for a non-positive weight or degree.
  WeightSystem(std::vector<Rational> weights, Rational degree_p, Rational degree_q);
  WeightSystem(std::vector<Rational> weights, Rational degree);

  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& degree_p() const { return degree_p_; }
  const Rational& degree_q() const { return degree_q_; }
  std::size_t num_vars() const { return weights_.size(); }
  bool same_degree() const { return degree_p_ == degree_q_; }

  std::vector<double> weights_as_double() const;

  // Positive multiple with integer entries whose overall gcd is 1.
  WeightSystem canonical() const;

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;

 private:
  std::vector<Rational> weights_;
  Rational degree_p_;
  Rational degree_q_;
};

enum class Component { P, Q };

struct QHVerdict {
  enum class Status { QuasiHomogeneous, NotQuasiHomogeneous };

  Status status = Status::NotQuasiHomogeneous;
  std::optional<WeightSystem> weights;
  // Why inference failed, or a note that the solution space is not a single
  // ray (more than one weight system fits).
  std::string reason;
  std::size_t solution_dimension = 0;
  bool same_degree = false;

  bool quasi_homogeneous() const { return status == Status::QuasiHomogeneous; }
  bool multiple_solutions() const { return solution_dimension > 1; }
};

// Solves <w, a> = b1 over the exponents a of P and <w, c> = b2 over those of
// Q exactly. When several weight systems fit, returns the lexicographically
// smallest (b1, b2, w_1, ..., w_m) among those with every w_i >= 1, scaled to
// coprime integers. Throws PreconditionError when P or Q is zero.
QHVerdict infer_weights(const MapGerm& germ, bool require_same_degree);

// True iff every monomial of p has weighted degree `degree`. The zero
// polynomial verifies against any system.
bool verify_qh(const Polynomial& p, const std::vector<Rational>& weights, const Rational& degree);
bool verify_qh(const Polynomial& p, const WeightSystem& ws, Component which);

// e(x) = (w_1 x_1, ..., w_m x_m).
PolyVectorField euler_field(const WeightSystem& ws);
PolyVectorField euler_field(const std::vector<Rational>& weights);

// <grad p, e> - b p; zero exactly when p is quasi-homogeneous of degree b.
Polynomial euler_residual(const Polynomial& p, const WeightSystem& ws, const Rational& degree);

}  // namespace milnor
