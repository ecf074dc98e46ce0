#include "ballconfig/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballconfig {

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Point Rng::unit_vector(Eigen::Index m) {
  if (m < 1) throw std::invalid_argument("unit_vector: dimension must be >= 1");
  while (true) {
    Point v(m);
    for (Eigen::Index k = 0; k < m; ++k) v[k] = gaussian();
    const double nrm = v.norm();
    if (nrm > 1e-12) return v / nrm;
  }
}

Point Rng::point_in_ball(Eigen::Index m) {
  const Point dir = unit_vector(m);
  const double radius = std::pow(uniform(), 1.0 / static_cast<double>(m));
  return radius * dir;
}

Permutation Rng::permutation(std::size_t n) {
  Permutation perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(next_u64() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

Configuration sample_configuration(Rng& rng, std::size_t n, Eigen::Index m, double min_gap) {
  if (n < 1) throw std::invalid_argument("sample_configuration: need n >= 1");
  constexpr int kMaxAttempts = 100000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.point_in_ball(m));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((pts[i] - pts[j]).norm() < min_gap) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return Configuration(m, std::move(pts));
  }
  throw std::runtime_error("sample_configuration: rejection sampler failed to find a valid configuration");
}

}  // namespace ballconfig
