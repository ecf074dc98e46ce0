#include "ballconfig/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ballconfig {

bool in_unit_ball(const Point& p, double slack) {
  return p.norm() <= 1.0 + slack;
}

bool bits_equal(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

Configuration::Configuration(Eigen::Index dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
  validate();
}

Configuration::Configuration(std::vector<Point> points)
    : dim_(points.empty() ? 0 : points.front().size()), points_(std::move(points)) {
  validate();
}

void Configuration::validate() const {
  if (points_.empty()) throw std::invalid_argument("Configuration: need at least one point");
  if (dim_ < 1) throw std::invalid_argument("Configuration: dimension must be >= 1");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.size() != dim_) {
      std::ostringstream os;
      os << "Configuration: point " << i << " has dimension " << p.size() << ", expected " << dim_;
      throw std::invalid_argument(os.str());
    }
    if (!p.allFinite()) {
      std::ostringstream os;
      os << "Configuration: point " << i << " has non-finite coordinates";
      throw std::invalid_argument(os.str());
    }
    if (!in_unit_ball(p)) {
      std::ostringstream os;
      os << "Configuration: point " << i << " lies outside the closed unit ball (norm " << p.norm() << ")";
      throw std::invalid_argument(os.str());
    }
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if ((points_[i] - points_[j]).norm() == 0.0) {
        std::ostringstream os;
        os << "Configuration: points " << i << " and " << j << " coincide";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

Configuration Configuration::with_prepended(Point p0) const {
  std::vector<Point> pts;
  pts.reserve(points_.size() + 1);
  pts.push_back(std::move(p0));
  pts.insert(pts.end(), points_.begin(), points_.end());
  return Configuration(dim_, std::move(pts));
}

Configuration Configuration::without_front() const {
  if (points_.size() < 2) throw std::invalid_argument("Configuration: cannot drop the only point");
  return Configuration(dim_, std::vector<Point>(points_.begin() + 1, points_.end()));
}

Configuration Configuration::with_replaced(std::size_t i, Point p) const {
  if (i >= points_.size()) throw std::invalid_argument("Configuration: slot index out of range");
  std::vector<Point> pts = points_;
  pts[i] = std::move(p);
  return Configuration(dim_, std::move(pts));
}

bool Configuration::operator==(const Configuration& other) const {
  if (dim_ != other.dim_ || points_.size() != other.points_.size()) return false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!bits_equal(points_[i], other.points_[i])) return false;
  }
  return true;
}

double min_pairwise_gap(const Configuration& c) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      best = std::min(best, (c[i] - c[j]).norm());
    }
  }
  return best;
}

double nearest_neighbor_distance(const Configuration& c, std::size_t i) {
  if (c.size() < 2) throw std::invalid_argument("nearest_neighbor_distance: undefined for a single point");
  if (i >= c.size()) throw std::invalid_argument("nearest_neighbor_distance: index out of range");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k == i) continue;
    best = std::min(best, (c[k] - c[i]).norm());
  }
  return best;
}

bool is_permutation(const Permutation& perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t v : perm) {
    if (v >= perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_identity(const Permutation& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

Configuration apply_permutation(const Configuration& c, const Permutation& perm) {
  if (perm.size() != c.size() || !is_permutation(perm)) {
    throw std::invalid_argument("apply_permutation: malformed permutation");
  }
  std::vector<Point> pts(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) pts[perm[i]] = c[i];
  return Configuration(c.dim(), std::move(pts));
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size() || !is_permutation(sigma) || !is_permutation(tau)) {
    throw std::invalid_argument("compose: malformed permutation");
  }
  Permutation out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[i] = sigma[tau[i]];
  return out;
}

double config_distance(const Configuration& a, const Configuration& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw std::invalid_argument("config_distance: mismatched shapes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, (a[i] - b[i]).norm());
  }
  return worst;
}

namespace {

bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return true;
    if (a[k] > b[k]) return false;
  }
  return false;
}

}  // namespace

Configuration canonical_form(const Configuration& c) {
  std::vector<Point> pts = c.points();
  std::sort(pts.begin(), pts.end(), lex_less);
  return Configuration(c.dim(), std::move(pts));
}

double canonical_distance(const Configuration& a, const Configuration& b) {
  return config_distance(canonical_form(a), canonical_form(b));
}

}  // namespace ballconfig
