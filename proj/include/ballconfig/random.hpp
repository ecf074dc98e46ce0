#pragma once

#include "ballconfig/geometry.hpp"

#include <cstdint>
#include <random>

namespace ballconfig {

// Deterministic draws layered over mt19937_64. The distributions are
// hand-rolled so that streams do not depend on standard-library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (cosine branch only).
  double gaussian();

  Point unit_vector(Eigen::Index m);

  // Uniform with respect to volume: gaussian direction times radius^(1/m).
  Point point_in_ball(Eigen::Index m);

  // Fisher-Yates shuffle of the identity.
  Permutation permutation(std::size_t n);

 private:
  std::mt19937_64 gen_;
};

// Conditioning floor for sampled configurations.
inline constexpr double kSampleGap = 1e-3;

// Rejection sampler: points uniform in the ball, configurations with
// min_pairwise_gap < min_gap are redrawn wholesale.
Configuration sample_configuration(Rng& rng, std::size_t n, Eigen::Index m,
                                   double min_gap = kSampleGap);

}  // namespace ballconfig
