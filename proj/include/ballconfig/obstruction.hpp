#pragma once

#include "ballconfig/geometry.hpp"
#include "ballconfig/sections.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ballconfig {

// Direction vectors at or below this norm count as collisions.
inline constexpr double kWindEps = 1e-9;

inline constexpr std::size_t kDefaultLoopSamples = 256;
// Undersampled loops are re-sampled with doubled density up to this cap.
inline constexpr std::size_t kMaxLoopSamples = 4096;

enum class WindingFailure { NearZeroVector, Undersampled, NonIntegral };

class WindingError : public std::runtime_error {
 public:
  WindingError(WindingFailure kind, std::size_t index, const std::string& what)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  WindingFailure kind() const { return kind_; }
  std::size_t index() const { return index_; }

 private:
  WindingFailure kind_;
  std::size_t index_;
};

// Discrete degree of a closed sequence of nonzero planar vectors: signed
// angles between consecutive vectors summed and divided by 2 pi. Throws
// WindingError on a near-zero vector, an angular step >= pi/2, or a residual
// >= 0.01 away from an integer.
int winding_number(const std::vector<Eigen::Vector2d>& vs, double eps = kWindEps);

// A finely sampled closed path of planar configurations: common n, m = 2, and
// first frame == last frame bit-exactly.
class LoopSample {
 public:
  explicit LoopSample(std::vector<Configuration> frames);

  const std::vector<Configuration>& frames() const { return frames_; }
  std::size_t points_per_frame() const { return frames_.front().size(); }
  std::size_t steps() const { return frames_.size() - 1; }

 private:
  std::vector<Configuration> frames_;
};

// Winding of the direction vector from slot a to slot b over the loop. Slots
// are zero-based positions in each frame.
int gauss_winding(const LoopSample& loop, std::size_t a, std::size_t b, double eps = kWindEps);

// Loop dual to the winding generator of the pair (a, b): the point in slot b
// orbits the point in slot a once counterclockwise at the given radius while
// everything else stays fixed. The orbit must stay in the ball and keep a
// 2-radius margin from all other points. The duality (winding 1 on the own
// pair, 0 on every other pair) is verified before returning.
LoopSample generator_loop(const Configuration& base, std::size_t a, std::size_t b, double radius,
                          std::size_t samples = kDefaultLoopSamples);

// Evidence that a candidate rule collided with a tracked point on a loop.
// Slots refer to the augmented frame: 0 is the added point, k >= 1 is p_k.
struct CollisionWitness {
  std::string loop;
  std::size_t frame = 0;
  std::size_t slot_a = 0;
  std::size_t slot_b = 0;
};

// Winding of the (added point, p1) pair over the image of a loop under a
// candidate rule, or the collision that prevented it.
struct ImagePairWinding {
  std::optional<int> winding;
  std::optional<CollisionWitness> collision;
};

ImagePairWinding image_pair_winding(const SectionDescriptor& s, const LoopSample& loop,
                                    const std::string& loop_id, double eps = kWindEps);

struct NamedLoop {
  std::string id;
  LoopSample loop;
};

// Measured expansion coefficients of a candidate rule against the generator
// loops. Keys use 1-based point labels: lambda_values[a] pairs against the
// loop where p_a orbits p_1; delta_values[{a,b}] against the loop where p_b
// orbits p_a, for 1 < a < b. identity_holds iff all lambda agree, every delta
// vanishes and lambda * (n - 1) == 1.
struct ObstructionReport {
  std::string section;
  std::size_t n = 0;
  std::map<std::size_t, int> lambda_values;
  std::map<std::pair<std::size_t, std::size_t>, int> delta_values;
  bool lambda_consistent = false;
  bool identity_holds = false;
  std::optional<CollisionWitness> collision;
};

// n points equally spaced on the circle of radius 0.6 with a seeded jitter of
// 0.01 per coordinate, breaking symmetric degeneracies.
Configuration default_obstruction_base(std::size_t n, std::uint64_t seed);

// Probe loops, when given, are checked first; any collision on them ends the
// measurement with a witness.
ObstructionReport measure_coefficients(const SectionDescriptor& s, const Configuration& base,
                                       double radius = 0.1,
                                       std::size_t samples = kDefaultLoopSamples,
                                       const std::vector<NamedLoop>& probes = {});

}  // namespace ballconfig
