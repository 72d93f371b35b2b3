#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "msns/common.hpp"

namespace msns {

using Engine = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a master seed and a tag path,
// e.g. derive_seed(master, {stream::cv_cell, ti, li, rep, fold}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

Engine make_engine(std::uint64_t seed);

// Stream tags. Keeping datasets, estimation and solver runs on separate
// streams means e.g. changing the test-set size cannot perturb training data.
namespace stream {
inline constexpr std::uint64_t dataset_train = 1;
inline constexpr std::uint64_t dataset_test = 2;
inline constexpr std::uint64_t dataset_xbar = 3;
inline constexpr std::uint64_t sigma2 = 4;
inline constexpr std::uint64_t run = 5;
inline constexpr std::uint64_t cv_cell = 6;
inline constexpr std::uint64_t cv_split = 7;
inline constexpr std::uint64_t ghat = 8;
}  // namespace stream

Vector sample_unit_direction(long dim, Engine& rng);

// Uniform direction, radius = sqrt(radius_sq) * U. Uniform in radius.
Vector sample_ball_radial(double radius_sq, long dim, Engine& rng);

// Uniform direction, radius = sqrt(radius_sq) * U^(1/dim). Uniform in volume.
Vector sample_ball_volume(double radius_sq, long dim, Engine& rng);

}  // namespace msns
