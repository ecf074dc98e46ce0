#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace ballconfig {

// Points live in the closed unit ball of R^m, radius 1, centered at the origin.
using Point = Eigen::VectorXd;

// Containment slack absorbing roundoff from homotopy operations.
inline constexpr double kBallEps = 1e-12;

// Distinctness floor used by verification harnesses. Construction itself uses a
// strict > 0 check.
inline constexpr double kGapEps = 1e-9;

bool in_unit_ball(const Point& p, double slack = kBallEps);

// Exact bitwise equality of coordinate vectors.
bool bits_equal(const Point& a, const Point& b);

// Ordered tuple of n >= 1 pairwise-distinct points, all in the closed unit ball.
// Immutable after construction; construction validates and throws
// std::invalid_argument on any violation.
class Configuration {
 public:
  Configuration(Eigen::Index dim, std::vector<Point> points);
  explicit Configuration(std::vector<Point> points);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  // Section outputs carry the added point in slot 0; these builders keep the
  // remaining slots bit-exact.
  Configuration with_prepended(Point p0) const;
  Configuration without_front() const;
  Configuration with_replaced(std::size_t i, Point p) const;

  // Bitwise equality of all slots.
  bool operator==(const Configuration& other) const;
  bool operator!=(const Configuration& other) const { return !(*this == other); }

 private:
  void validate() const;

  Eigen::Index dim_;
  std::vector<Point> points_;
};

// Minimum over i < j of |p_i - p_j|; +infinity when n == 1.
double min_pairwise_gap(const Configuration& c);

// d_i: distance from point i to its nearest neighbor. Requires n >= 2.
double nearest_neighbor_distance(const Configuration& c, std::size_t i);

// perm maps input slot i to output slot perm[i].
using Permutation = std::vector<std::size_t>;

bool is_permutation(const Permutation& perm);
bool is_identity(const Permutation& perm);

Configuration apply_permutation(const Configuration& c, const Permutation& perm);

// compose(sigma, tau) acts as tau first, then sigma.
Permutation compose(const Permutation& sigma, const Permutation& tau);

// Sup metric on ordered configurations of equal shape: max_i |a_i - b_i|.
double config_distance(const Configuration& a, const Configuration& b);

// Lexicographic sort of the points: a canonical representative of the
// unordered (permutation-quotient) class.
Configuration canonical_form(const Configuration& c);

// Max pointwise deviation between canonical forms; a permutation-invariant
// equality probe. Requires equal shapes.
double canonical_distance(const Configuration& a, const Configuration& b);

}  // namespace ballconfig
