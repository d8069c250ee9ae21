#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "milnor/rational.hpp"

namespace milnor {

// Exponent vector; its length is the variable count of the owning polynomial.
using Monomial = std::vector<std::uint32_t>;

// Exact multivariate polynomial over Q in canonical form: the term map never
// holds a zero coefficient, so structural equality is polynomial equality.
// Terms are kept in lexicographic exponent order, which fixes the summation
// order of floating-point evaluation and the textual form.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t index);
  static Polynomial monomial(Monomial exponents, const Rational& c);

  std::size_t num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Highest / lowest total degree over stored terms; 0 for the zero polynomial.
  std::uint32_t total_degree() const;
  std::uint32_t order() const;

  Rational coefficient(const Monomial& exponents) const;

  // Accumulates c into the coefficient of `exponents`, dropping the term if
  // it cancels.
  void add_term(const Monomial& exponents, const Rational& c);

  Polynomial derivative(std::size_t index) const;

  // Sum of coeff * prod x_i^e_i in term order.
  double evaluate(std::span<const double> x) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  // Human-readable form such as "x^2 - y^2". Empty `names` yields x1..xm.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  std::size_t num_vars_;
  TermMap terms_;
};

// m polynomial components over a common variable count.
struct PolyVectorField {
  std::vector<Polynomial> components;

  PolyVectorField() = default;
  explicit PolyVectorField(std::vector<Polynomial> comps);
  static PolyVectorField zero(std::size_t dim, std::size_t num_vars);

  std::size_t size() const { return components.size(); }
  std::size_t num_vars() const { return components.empty() ? 0 : components.front().num_vars(); }
  const Polynomial& operator[](std::size_t i) const { return components[i]; }
  Polynomial& operator[](std::size_t i) { return components[i]; }
  bool is_zero() const;

  std::vector<double> evaluate(std::span<const double> x) const;

  friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b);
  friend PolyVectorField operator-(const PolyVectorField& a);
  // Scales every component by the polynomial s.
  friend PolyVectorField operator*(const Polynomial& s, const PolyVectorField& v);
  friend PolyVectorField operator*(const Rational& c, const PolyVectorField& v);
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) = default;
};

Polynomial dot(const PolyVectorField& u, const PolyVectorField& v);
PolyVectorField gradient(const Polynomial& p);

// The position field (x_1, ..., x_m).
PolyVectorField position_field(std::size_t num_vars);

// f = (P, Q) : R^m -> R^2 with named variables, m >= 2.
class MapGerm {
 public:
  MapGerm(Polynomial p, Polynomial q, std::vector<std::string> variable_names = {});

  const Polynomial& P() const { return p_; }
  const Polynomial& Q() const { return q_; }
  std::size_t num_vars() const { return p_.num_vars(); }
  const std::vector<std::string>& variable_names() const { return names_; }

  // Lowest total degree among the terms of P and Q; sets the size scale
  // |f| ~ eps^order on small spheres. At least 1.
  std::uint32_t order() const;

  friend bool operator==(const MapGerm&, const MapGerm&) = default;

 private:
  Polynomial p_;
  Polynomial q_;
  std::vector<std::string> names_;
};

std::vector<std::string> default_variable_names(std::size_t num_vars);

// Real pair (Re h, Im h) of h = f * conj(g) for complex f = fRe + i fIm and
// g = gRe + i gIm written in real coordinates.
MapGerm fg_bar_pair(const Polynomial& f_re, const Polynomial& f_im, const Polynomial& g_re,
                    const Polynomial& g_im, std::vector<std::string> variable_names = {});

}  // namespace milnor
