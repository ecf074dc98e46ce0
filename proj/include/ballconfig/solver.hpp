#pragma once

#include "ballconfig/geometry.hpp"
#include "ballconfig/random.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ballconfig {

enum class PointMapKind { Constant, Centroid, Contraction, Registered };

// A symmetric rule sending a configuration to one point of the ball, the input
// to the fixed-configuration search.
struct PointMapDescriptor {
  PointMapKind kind = PointMapKind::Centroid;
  Point target;        // constant value, or the contraction target q
  double alpha = 0.5;  // contraction rate in [0, 1)
  std::string name;    // registered maps
  bool declared_symmetric = true;

  static PointMapDescriptor constant(Point q);
  static PointMapDescriptor centroid();
  // c -> alpha * centroid(c) + (1 - alpha) * q.
  static PointMapDescriptor contraction(double alpha, Point q);
  static PointMapDescriptor registered(std::string name);

  // "centroid" | "constant:x,..." | "contraction:alpha,x,..." | a registered
  // name; coordinate counts must match m.
  static PointMapDescriptor parse(const std::string& text, Eigen::Index m);
  std::string describe() const;
};

using PointMapFn = std::function<Point(const Configuration&)>;

class PointMapRegistry {
 public:
  struct Entry {
    PointMapFn fn;
    bool symmetric = true;
  };

  // Preloaded with the asymmetric fixture "first-point".
  static PointMapRegistry& global();

  void add(const std::string& name, PointMapFn fn, bool symmetric);
  bool contains(const std::string& name) const;
  const Entry& at(const std::string& name) const;

 private:
  std::map<std::string, Entry> entries_;
};

// Evaluates the map and validates its output (dimension, finiteness,
// containment in the closed ball).
Point evaluate_point_map(const PointMapDescriptor& f, const Configuration& c);

// min_i |f(c) - p_i|: zero exactly when f(c) coincides with a configuration point.
double residual(const PointMapDescriptor& f, const Configuration& c);

// Smallest index attaining the residual minimum.
std::size_t nearest_slot(const PointMapDescriptor& f, const Configuration& c);

struct FixedSearchOptions {
  double tol = 1e-6;
  std::size_t restarts = 32;
  std::size_t budget = 100000;  // total objective evaluations across restarts
  std::uint64_t seed = 0;
  // Distinctness floor during the search; iterates below it score +infinity.
  // Matches the sampler's conditioning floor rather than the verification
  // epsilon, keeping the search off near-collision configurations.
  double min_gap = kSampleGap;
};

struct FixedSearchResult {
  Configuration best;
  double residual = 0.0;
  std::size_t evaluations = 0;
  std::size_t restarts_used = 0;
  bool converged = false;
  std::size_t nearest_index = 0;
};

// Multistart derivative-free descent (Nelder-Mead) on the residual over the
// n*m coordinates, with radial projection onto the closed ball. Deterministic
// for a fixed seed; stops early once a restart lands below tol.
FixedSearchResult find_fixed_configuration(const PointMapDescriptor& f, std::size_t n,
                                           Eigen::Index m, const FixedSearchOptions& opts = {});

// Counts sampled pairs (c, sigma) with |f(sigma c) - f(c)| > tol.
std::size_t symmetry_check(const PointMapDescriptor& f, std::size_t n, Eigen::Index m,
                           std::size_t samples, std::uint64_t seed, double tol = 1e-10);

}  // namespace ballconfig
