#include "milnor/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "milnor/errors.hpp"

namespace milnor {

namespace {

void require_same_vars(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractError(std::string(what) + ": variable count mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
  }
}

std::uint32_t degree_of(const Monomial& m) { return std::accumulate(m.begin(), m.end(), std::uint32_t{0}); }

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

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Monomial(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw ContractError("variable index out of range");
  Monomial e(num_vars, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(Monomial exponents, const Rational& c) {
  Polynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [mono, coeff] : terms_) d = std::max(d, degree_of(mono));
  return d;
}

std::uint32_t Polynomial::order() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = degree_of(terms_.begin()->first);
  for (const auto& [mono, coeff] : terms_) d = std::min(d, degree_of(mono));
  return d;
}

Rational Polynomial::coefficient(const Monomial& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& exponents, const Rational& c) {
  require_same_vars(num_vars_, exponents.size(), "add_term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= num_vars_) throw ContractError("derivative index out of range");
  Polynomial d(num_vars_);
  for (const auto& [mono, coeff] : terms_) {
    if (mono[index] == 0) continue;
    Monomial e = mono;
    --e[index];
    d.terms_.emplace(std::move(e), coeff * mono[index]);
  }
  return d;
}

double Polynomial::evaluate(std::span<const double> x) const {
  require_same_vars(num_vars_, x.size(), "evaluate");
  double sum = 0.0;
  for (const auto& [mono, coeff] : terms_) {
    double term = to_double(coeff);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (mono[i] != 0) term *= ipow(x[i], mono[i]);
    }
    sum += term;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_vars(num_vars_, rhs.num_vars_, "add");
  for (const auto& [mono, coeff] : rhs.terms_) add_term(mono, coeff);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_same_vars(num_vars_, rhs.num_vars_, "subtract");
  for (const auto& [mono, coeff] : rhs.terms_) add_term(mono, -coeff);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_vars(a.num_vars_, b.num_vars_, "multiply");
  Polynomial out(a.num_vars_);
  Monomial e(a.num_vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ma[i] + mb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out = a;
  for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
  return out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> fallback;
  if (names.size() != num_vars_) {
    fallback = default_variable_names(num_vars_);
    names = fallback;
  }
  std::ostringstream os;
  bool first = true;
  // Highest exponents first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, coeff] = *it;
    const bool negative = coeff < 0;
    const Rational mag = abs(coeff);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool is_const = degree_of(mono) == 0;
    bool wrote = false;
    if (mag != 1 || is_const) {
      os << milnor::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (mono[i] == 0) continue;
      if (wrote) os << "*";
      os << names[i];
      if (mono[i] > 1) os << "^" << mono[i];
      wrote = true;
    }
  }
  return os.str();
}

PolyVectorField::PolyVectorField(std::vector<Polynomial> comps) : components(std::move(comps)) {
  for (const auto& c : components) require_same_vars(num_vars(), c.num_vars(), "PolyVectorField");
}

PolyVectorField PolyVectorField::zero(std::size_t dim, std::size_t num_vars) {
  return PolyVectorField(std::vector<Polynomial>(dim, Polynomial(num_vars)));
}

bool PolyVectorField::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::vector<double> PolyVectorField::evaluate(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(c.evaluate(x));
  return out;
}

PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
  require_same_vars(a.size(), b.size(), "field add");
  PolyVectorField out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
  require_same_vars(a.size(), b.size(), "field subtract");
  PolyVectorField out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

PolyVectorField operator-(const PolyVectorField& a) {
  PolyVectorField out = a;
  for (auto& c : out.components) c = -c;
  return out;
}

PolyVectorField operator*(const Polynomial& s, const PolyVectorField& v) {
  PolyVectorField out = v;
  for (auto& c : out.components) c = s * c;
  return out;
}

PolyVectorField operator*(const Rational& c, const PolyVectorField& v) {
  PolyVectorField out = v;
  for (auto& comp : out.components) comp *= c;
  return out;
}

Polynomial dot(const PolyVectorField& u, const PolyVectorField& v) {
  require_same_vars(u.size(), v.size(), "dot");
  require_same_vars(u.num_vars(), v.num_vars(), "dot");
  Polynomial sum(u.num_vars());
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * v[i];
  return sum;
}

PolyVectorField gradient(const Polynomial& p) {
  std::vector<Polynomial> comps;
  comps.reserve(p.num_vars());
  for (std::size_t i = 0; i < p.num_vars(); ++i) comps.push_back(p.derivative(i));
  return PolyVectorField(std::move(comps));
}

PolyVectorField position_field(std::size_t num_vars) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < num_vars; ++i) comps.push_back(Polynomial::variable(num_vars, i));
  return PolyVectorField(std::move(comps));
}

std::vector<std::string> default_variable_names(std::size_t num_vars) {
  if (num_vars == 2) return {"x", "y"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < num_vars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

MapGerm::MapGerm(Polynomial p, Polynomial q, std::vector<std::string> variable_names)
    : p_(std::move(p)), q_(std::move(q)), names_(std::move(variable_names)) {
  require_same_vars(p_.num_vars(), q_.num_vars(), "MapGerm");
  if (p_.num_vars() < 2) throw ContractError("MapGerm needs at least two variables");
  if (names_.empty()) names_ = default_variable_names(p_.num_vars());
  require_same_vars(p_.num_vars(), names_.size(), "MapGerm variable names");
}

std::uint32_t MapGerm::order() const {
  std::uint32_t d = 0;
  bool any = false;
  for (const Polynomial* p : {&p_, &q_}) {
    if (p->is_zero()) continue;
    d = any ? std::min(d, p->order()) : p->order();
    any = true;
  }
  return std::max<std::uint32_t>(d, 1);
}

MapGerm fg_bar_pair(const Polynomial& f_re, const Polynomial& f_im, const Polynomial& g_re,
                    const Polynomial& g_im, std::vector<std::string> variable_names) {
  require_same_vars(f_re.num_vars(), f_im.num_vars(), "fg_bar_pair");
  require_same_vars(f_re.num_vars(), g_re.num_vars(), "fg_bar_pair");
  require_same_vars(f_re.num_vars(), g_im.num_vars(), "fg_bar_pair");
  // (a + ib)(c - id) = (ac + bd) + i(bc - ad)
  return MapGerm(f_re * g_re + f_im * g_im, f_im * g_re - f_re * g_im, std::move(variable_names));
}

}  // namespace milnor
