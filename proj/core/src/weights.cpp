#include "milnor/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "milnor/errors.hpp"

namespace milnor {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Basis of the right null space of `a` (rows x cols), as column vectors.
std::vector<std::vector<Rational>> null_space(Matrix a, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    const Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves the square system m t = rhs; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(Matrix m, std::vector<Rational> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Calls visit(subset) for every k-subset of {0, ..., n-1}.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string list_forced_zero(const std::vector<std::size_t>& idx, const std::vector<std::string>& names) {
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ", ";
    os << "w" << idx[i] + 1 << " = 0 (" << names[idx[i]] << ")";
  }
  return os.str();
}

}  // namespace

WeightSystem::WeightSystem(std::vector<Rational> weights, Rational degree_p, Rational degree_q)
    : weights_(std::move(weights)), degree_p_(std::move(degree_p)), degree_q_(std::move(degree_q)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] <= 0) throw PreconditionError("weight w" + std::to_string(i + 1) + " must be positive");
  }
  if (degree_p_ <= 0 || degree_q_ <= 0) throw PreconditionError("weighted degrees must be positive");
}

WeightSystem::WeightSystem(std::vector<Rational> weights, Rational degree)
    : WeightSystem(std::move(weights), degree, degree) {}

std::vector<double> WeightSystem::weights_as_double() const {
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto& w : weights_) out.push_back(to_double(w));
  return out;
}

WeightSystem WeightSystem::canonical() const {
  Integer den = 1;
  Integer num = 0;
  auto absorb = [&](const Rational& r) {
    den = lcm(den, r.get_den());
    num = gcd(num, r.get_num());
  };
  for (const auto& w : weights_) absorb(w);
  absorb(degree_p_);
  absorb(degree_q_);
  const Rational scale(den, num);
  std::vector<Rational> w;
  for (const auto& x : weights_) w.push_back(x * scale);
  return WeightSystem(std::move(w), degree_p_ * scale, degree_q_ * scale);
}

QHVerdict infer_weights(const MapGerm& germ, bool require_same_degree) {
  if (germ.P().is_zero() || germ.Q().is_zero()) {
    throw PreconditionError("weight inference needs nonzero P and Q");
  }
  const std::size_t m = germ.num_vars();
  // Unknowns: w_1..w_m, b1, and b2 unless tied to b1.
  const std::size_t cols = require_same_degree ? m + 1 : m + 2;
  const std::size_t col_b1 = m;
  const std::size_t col_b2 = require_same_degree ? m : m + 1;

  Matrix rows;
  auto add_rows = [&](const Polynomial& p, std::size_t degree_col) {
    for (const auto& [mono, coeff] : p.terms()) {
      std::vector<Rational> r(cols, Rational(0));
      for (std::size_t i = 0; i < m; ++i) r[i] = mono[i];
      r[degree_col] = -1;
      rows.push_back(std::move(r));
    }
  };
  add_rows(germ.P(), col_b1);
  add_rows(germ.Q(), col_b2);

  const auto basis = null_space(rows, cols);
  QHVerdict verdict;
  verdict.solution_dimension = basis.size();

  std::vector<std::size_t> forced_zero;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::all_of(basis.begin(), basis.end(), [&](const auto& v) { return v[i] == 0; })) forced_zero.push_back(i);
  }
  if (!forced_zero.empty()) {
    verdict.reason = "system forces " + list_forced_zero(forced_zero, germ.variable_names());
    return verdict;
  }

  // Solution u = sum_j t_j basis_j. Minimize (b1, b2, w) lexicographically
  // over {w_i(t) >= 1}; the minimum is a vertex, so enumerate vertices.
  const std::size_t k = basis.size();
  auto coord = [&](const std::vector<Rational>& t, std::size_t c) {
    Rational s = 0;
    for (std::size_t j = 0; j < k; ++j) s += t[j] * basis[j][c];
    return s;
  };
  std::optional<std::vector<Rational>> best;
  auto key_less = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a[col_b1] != b[col_b1]) return a[col_b1] < b[col_b1];
    if (a[col_b2] != b[col_b2]) return a[col_b2] < b[col_b2];
    return std::lexicographical_compare(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(m), b.begin(),
                                        b.begin() + static_cast<std::ptrdiff_t>(m));
  };
  for_each_subset(m, k, [&](const std::vector<std::size_t>& tight) {
    Matrix sys;
    for (std::size_t i : tight) {
      std::vector<Rational> r(k);
      for (std::size_t j = 0; j < k; ++j) r[j] = basis[j][i];
      sys.push_back(std::move(r));
    }
    const auto t = solve_square(std::move(sys), std::vector<Rational>(k, Rational(1)));
    if (!t) return;
    std::vector<Rational> u(cols);
    for (std::size_t c = 0; c < cols; ++c) u[c] = coord(*t, c);
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i] < 1) return;
    }
    if (!best || key_less(u, *best)) best = std::move(u);
  });

  if (!best) {
    verdict.reason = "no strictly positive weight vector solves the weighted-degree system";
    return verdict;
  }
  const auto& u = *best;
  if (u[col_b1] <= 0 || u[col_b2] <= 0) {
    verdict.reason = u[col_b1] <= 0 ? "P has a nonzero constant term (degree b1 = 0)"
                                    : "Q has a nonzero constant term (degree b2 = 0)";
    return verdict;
  }
  WeightSystem ws(std::vector<Rational>(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(m)), u[col_b1],
                  u[col_b2]);
  ws = ws.canonical();
  verdict.status = QHVerdict::Status::QuasiHomogeneous;
  verdict.same_degree = ws.same_degree();
  verdict.weights = std::move(ws);
  if (k > 1) {
    verdict.reason = "solution space has dimension " + std::to_string(k) +
                     "; returned the representative of least degree";
  }
  return verdict;
}

bool verify_qh(const Polynomial& p, const std::vector<Rational>& weights, const Rational& degree) {
  if (p.num_vars() != weights.size()) throw ContractError("verify_qh: weight count differs from variable count");
  for (const auto& [mono, coeff] : p.terms()) {
    Rational d = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) d += weights[i] * mono[i];
    if (d != degree) return false;
  }
  return true;
}

bool verify_qh(const Polynomial& p, const WeightSystem& ws, Component which) {
  return verify_qh(p, ws.weights(), which == Component::P ? ws.degree_p() : ws.degree_q());
}

PolyVectorField euler_field(const std::vector<Rational>& weights) {
  const std::size_t m = weights.size();
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < m; ++i) comps.push_back(weights[i] * Polynomial::variable(m, i));
  return PolyVectorField(std::move(comps));
}

PolyVectorField euler_field(const WeightSystem& ws) { return euler_field(ws.weights()); }

Polynomial euler_residual(const Polynomial& p, const WeightSystem& ws, const Rational& degree) {
  if (p.num_vars() != ws.num_vars()) throw ContractError("euler_residual: weight count differs from variable count");
  return dot(gradient(p), euler_field(ws)) - degree * p;
}

}  // namespace milnor
