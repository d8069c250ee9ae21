// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "milnor/milnor.hpp"
#include "support/generators.hpp"
#include "support/germs.hpp"
#include "support/oracles.hpp"

namespace {

using namespace milnor;
using milnor::testing::germ_a;
using milnor::testing::germ_b;
using milnor::testing::germ_d;
using milnor::testing::germ_ex2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

std::vector<Rational> ints(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

bool all_zero(const std::vector<IdentityCertificate>& certs, std::size_t expected) {
  if (certs.size() != expected) return false;
  for (const auto& c : certs) {
    if (!c.holds || !c.residual.is_zero()) return false;
  }
  return true;
}

void criterion_identities(Outcome& o) {
  const std::array<std::pair<const char*, std::pair<MapGerm, WeightSystem>>, 3> fixed{{
      {"A", {germ_a(), WeightSystem(ints({1, 1}), Rational(2))}},
      {"B", {germ_b(), WeightSystem(ints({2, 1}), Rational(4))}},
      {"D", {germ_d(), WeightSystem(ints({1, 1, 1, 1}), Rational(2))}},
  }};
  for (const auto& [name, gw] : fixed) {
    o.require(all_zero(certify_identities(gw.first, gw.second), 4), std::string("germ ") + name);
  }
  std::mt19937_64 rng(20240601);
  std::size_t ok = 0;
  constexpr std::size_t kPairs = 200;
  for (std::size_t i = 0; i < kPairs; ++i) {
    const auto pair = milnor::testing::random_qh_pair(rng);
    const WeightSystem ws = milnor::testing::to_weight_system(pair);
    const bool direct = lemma1_residual(pair.germ, ws).residual.is_zero() &&
                        condition_b_residual(pair.germ, ws).residual.is_zero() &&
                        euler_residual(pair.germ.P(), ws, ws.degree_p()).is_zero() &&
                        euler_residual(pair.germ.Q(), ws, ws.degree_q()).is_zero();
    if (direct && all_zero(certify_identities(pair.germ, ws), 4)) ++ok;
  }
  o.require(ok == kPairs, "random pairs " + std::to_string(ok) + "/" + std::to_string(kPairs));
  o.detail << (o.pass ? "" : "; ") << "A, B, D and " << ok << " random pairs exactly zero";
}

void criterion_example2(Outcome& o) {
  const MapGerm g = germ_ex2();
  const Polynomial x = milnor::testing::var(2, 0), y = milnor::testing::var(2, 1);
  const Polynomial expected = (x * x + y * y) * (x * x + y * y) - x * x * y;
  const Polynomial residual = parallel_residual(g, ParallelForm::Tangential);
  o.require(residual == expected, "tangential residual is " + residual.to_string(g.variable_names()));

  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / 1000.0;
    const double r = example2_polar_radius(t);
    const std::vector<double> p{r * std::cos(t), r * std::sin(t)};
    worst = std::max(worst, std::abs(residual.evaluate(p)) / std::max(1.0, std::pow(r, 4)));
  }
  o.require(worst <= 1e-14, "polar residual " + std::to_string(worst));

  const auto crit = critical_points_on_sphere(g, 0.2, 64, 1);
  o.require(crit.points.size() == 4, "found " + std::to_string(crit.points.size()) + " critical points");
  double angle_err = 0.0;
  if (crit.points.size() == 4) {
    std::vector<double> angles;
    for (const auto& p : crit.points) angles.push_back(std::atan2(p[1], p[0]));
    std::sort(angles.begin(), angles.end());
    const auto oracle = milnor::testing::ex2_critical_angles(0.2);
    for (std::size_t i = 0; i < 4; ++i) angle_err = std::max(angle_err, std::abs(angles[i] - oracle[i]));
    o.require(angle_err <= 1e-8, "angle error " + std::to_string(angle_err));
  }
  o.detail << (o.pass ? "" : "; ") << "4 points, max angle error " << angle_err << ", polar residual " << worst;
}

void criterion_negative_control(Outcome& o) {
  const QHVerdict v = infer_weights(germ_ex2(), false);
  o.require(!v.quasi_homogeneous(), "ex2 accepted as quasi-homogeneous");
  o.require(v.reason.find("w1 = 0") != std::string::npos, "reason '" + v.reason + "' does not force w1 = 0");

  const MapGerm a = germ_a();
  const Polynomial x = milnor::testing::var(2, 0), y = milnor::testing::var(2, 1);
  const Polynomial r2 = x * x + y * y;
  const Polynomial residual = parallel_residual(a, ParallelForm::Tangential);
  o.require(residual == Rational(2) * r2 * r2, "A tangential residual is " + residual.to_string(a.variable_names()));
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto crit = critical_points_on_sphere(a, eps, 64, 1);
    o.require(crit.points.empty(), "A has " + std::to_string(crit.points.size()) + " points at eps " +
                                       std::to_string(eps));
    const std::vector<double> p{0.6 * eps, 0.8 * eps};
    const double expected = 2 * std::pow(eps, 4);
    o.require(std::abs(residual.evaluate(p) - expected) <= 1e-15 * expected, "residual on sphere != 2 eps^4");
  }
  o.detail << (o.pass ? "" : "; ") << "ex2 rejected (" << v.reason << "), A empty at eps 0.1/0.5/1.0";
}

void criterion_equivalence(Outcome& o) {
  for (const auto& [name, g] : {std::pair{"A", germ_a()}, std::pair{"D", germ_d()}}) {
    const auto r = equivalence_report(g, 1.0, 0.01, 100, 1);
    o.require(r.num_samples == 100, std::string(name) + " sampled " + std::to_string(r.num_samples));
    o.require(r.max_angular_deviation <= 1e-8, std::string(name) + " deviation " +
                                                   std::to_string(r.max_angular_deviation));
    o.require(r.max_sphere_residual <= 1e-10, std::string(name) + " sphere residual " +
                                                  std::to_string(r.max_sphere_residual));
    o.require(r.injectivity_violations == 0, std::string(name) + " injectivity violations");
    o.detail << (o.pass ? "" : "; ") << name << ": dev " << r.max_angular_deviation << ", sphere "
             << r.max_sphere_residual << " ";
  }
}

void criterion_flow(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> horizon(0.0, 2.0);
  double rk4_err = 0.0, group_err = 0.0, transport_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto pair = milnor::testing::random_qh_pair(rng);
    const WeightSystem ws = milnor::testing::to_weight_system(pair);
    auto r = stream_rng(99, static_cast<std::uint64_t>(trial));
    const Point x = uniform_ball_point(r, ws.num_vars(), 1.0);
    const double s = horizon(rng), t = horizon(rng) - 1.0;

    const Point closed = euler_flow(x, s, ws);
    const Point numeric = milnor::testing::rk4_euler_flow(x, ws.weights_as_double(), s, 20000);
    for (std::size_t i = 0; i < x.size(); ++i) {
      rk4_err = std::max(rk4_err, std::abs(closed[i] - numeric[i]) / std::max(1.0, std::abs(closed[i])));
    }
    const Point composed = euler_flow(closed, t, ws);
    const Point direct = euler_flow(x, s + t, ws);
    for (std::size_t i = 0; i < x.size(); ++i) {
      group_err = std::max(group_err, std::abs(composed[i] - direct[i]) / std::max(1e-300, std::abs(direct[i])));
    }
    const double scale = std::exp(pair.degree * s);
    for (const Polynomial* p : {&pair.germ.P(), &pair.germ.Q()}) {
      const double want = scale * p->evaluate(x);
      transport_err =
          std::max(transport_err, std::abs(p->evaluate(closed) - want) / std::max(1.0, std::abs(want)));
    }
  }
  o.require(rk4_err <= 1e-8, "rk4 error " + std::to_string(rk4_err));
  o.require(group_err <= 1e-9, "group law error " + std::to_string(group_err));
  o.require(transport_err <= 1e-9, "transport error " + std::to_string(transport_err));
  o.detail << (o.pass ? "" : "; ") << "rk4 " << rk4_err << ", group " << group_err << ", transport "
           << transport_err;
}

void criterion_jacobian(Outcome& o) {
  double fd_err = 0.0;
  int points = 0;
  for (const auto& [name, g] :
       {std::pair{"A", germ_a()}, std::pair{"B", germ_b()}, std::pair{"D", germ_d()}, std::pair{"ex2", germ_ex2()}}) {
    std::uint64_t k = 0;
    for (int accepted = 0; accepted < 100; ++k) {
      auto rng = stream_rng(606, k);
      const Point x = uniform_ball_point(rng, g.num_vars(), 1.0);
      const double f = std::hypot(g.P().evaluate(x), g.Q().evaluate(x));
      if (norm(x) < 0.1 || f < 1e-3) continue;
      ++accepted;
      ++points;
      const ProjectionJacobian exact = projection_jacobian(g, x);
      const auto fd = milnor::testing::fd_projection_jacobian(g, x);
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < x.size(); ++c) fd_err = std::max(fd_err, std::abs(exact[r][c] - fd[r][c]));
      }
    }
  }
  o.require(fd_err <= 1e-6, "finite difference error " + std::to_string(fd_err));

  const auto crit = critical_points_on_sphere(germ_ex2(), 0.2, 64, 1);
  o.require(!crit.points.empty(), "no ex2 critical points");
  double worst_sigma = 0.0;
  for (const auto& p : crit.points) worst_sigma = std::max(worst_sigma, projection_submersion_sigma(germ_ex2(), p));
  o.require(worst_sigma <= 1e-6, "sigma at critical point " + std::to_string(worst_sigma));
  o.detail << (o.pass ? "" : "; ") << points << " points, fd error " << fd_err << ", max sigma at "
           << crit.points.size() << " critical points " << worst_sigma;
}

void criterion_rank(Outcome& o) {
  const RankSampleReport r = df_min_singular_sample(germ_d(), 0.5, 200, 1);
  o.require(std::abs(r.min_sigma - 0.5) <= 1e-12, "min_sigma " + std::to_string(r.min_sigma));
  o.detail << (o.pass ? "" : "; ") << "min_sigma " << r.min_sigma << " over " << r.num_samples << " samples";
}

struct Capture {
  std::string out;
  int code = -1;
};

Capture run_cli_binary(const std::string& args) {
  Capture c;
  const std::string cmd = std::string("\"") + MILNOR_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

void criterion_cli(Outcome& o) {
  const std::string germs = std::string("\"") + MILNOR_DATA_DIR + "/germs/";
  const std::string args = "critical " + germs + "germ_ex2.json\" --epsilon 0.2 --starts 64 --seed 42";
  const Capture first = run_cli_binary(args), second = run_cli_binary(args);
  o.require(first.code == 0 && !first.out.empty(), "critical run failed");
  o.require(first.out == second.out, "JSON differs between runs");

  const Capture pass = run_cli_binary("identities " + germs + "germD.json\"");
  const Capture fail = run_cli_binary("identities " + germs + "germ_ex2.json\"");
  o.require(pass.code == 0, "passing certificate exit " + std::to_string(pass.code));
  o.require(fail.code == 1, "failing certificate exit " + std::to_string(fail.code));
  o.detail << (o.pass ? "" : "; ") << first.out.size() << " identical bytes, exit codes " << pass.code << "/"
           << fail.code;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"identity certificates", criterion_identities},
      {"example ex2 reproduction", criterion_example2},
      {"negative control", criterion_negative_control},
      {"tube to sphere equivalence", criterion_equivalence},
      {"flow correctness", criterion_flow},
      {"projection Jacobian", criterion_jacobian},
      {"rank evidence", criterion_rank},
      {"CLI determinism", criterion_cli},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail.str() << " [" << secs << " s]\n";
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}
