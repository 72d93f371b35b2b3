#include "msns/rng.hpp"

#include <cmath>

namespace msns {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t tag : path) {
    h = mix64(h ^ mix64(tag));
  }
  return h;
}

Engine make_engine(std::uint64_t seed) { return Engine(seed); }

Vector sample_unit_direction(long dim, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  double norm = 0;
  do {
    for (long i = 0; i < dim; ++i) v[i] = normal(rng);
    norm = v.norm();
  } while (norm == 0);
  return v / norm;
}

Vector sample_ball_radial(double radius_sq, long dim, Engine& rng) {
  Vector dir = sample_unit_direction(dim, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return dir * (std::sqrt(radius_sq) * unif(rng));
}

Vector sample_ball_volume(double radius_sq, long dim, Engine& rng) {
  Vector dir = sample_unit_direction(dim, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = std::sqrt(radius_sq) * std::pow(unif(rng), 1.0 / static_cast<double>(dim));
  return dir * r;
}

}  // namespace msns
