#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace milnor {

using Point = std::vector<double>;

// Independent stream for sample `index` of a run seeded with `seed`, so
// multistart work can be split or reordered without changing results.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

Point uniform_sphere_point(std::mt19937_64& rng, std::size_t dim, double radius);
Point uniform_ball_point(std::mt19937_64& rng, std::size_t dim, double radius);

double norm(std::span<const double> x);
double distance(std::span<const double> a, std::span<const double> b);

// Angle in [0, pi] between two nonzero plane vectors.
double angle_between(double ax, double ay, double bx, double by);

}  // namespace milnor
