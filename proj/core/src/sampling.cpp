#include "milnor/sampling.hpp"

#include <cmath>

namespace milnor {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U)};
  return std::mt19937_64(seq);
}

Point uniform_sphere_point(std::mt19937_64& rng, std::size_t dim, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point p(dim);
  double n = 0.0;
  do {
    for (auto& v : p) v = gauss(rng);
    n = norm(p);
  } while (n < 1e-12);
  for (auto& v : p) v *= radius / n;
  return p;
}

Point uniform_ball_point(std::mt19937_64& rng, std::size_t dim, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Point p = uniform_sphere_point(rng, dim, 1.0);
  const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(dim));
  for (auto& v : p) v *= r;
  return p;
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double angle_between(double ax, double ay, double bx, double by) {
  return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
}

}  // namespace milnor
