#pragma once

#include "ballconfig/geometry.hpp"
#include "ballconfig/random.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ballconfig {

// Drops the added point in slot 0: (p0, p1, ..., pn) -> (p1, ..., pn).
Configuration forget_point(const Configuration& c);

// n = 2 only: appends the midpoint of the two points.
Configuration midpoint_section(const Configuration& c);

// n >= 2: appends a point at distance d_anchor/2 from the anchor, along the
// direction toward another point. Indices are zero-based slots.
Configuration add_near_section(const Configuration& c, std::size_t anchor, std::size_t toward);

// n = 2 only: appends (1-alpha) p1 + alpha p2 for alpha in (0, 1). Not
// equivariant for alpha != 1/2; used as the non-equivariant fixture.
Configuration biased_interpolation_section(const Configuration& c, double alpha);

enum class SectionKind { Midpoint, AddNear, BiasedInterpolation, Registered };

// A named rule that appends one new distinct point in front of a configuration.
struct SectionDescriptor {
  SectionKind kind = SectionKind::Midpoint;
  std::size_t anchor = 0;  // add_near: the point the new one stays close to
  std::size_t toward = 1;  // add_near: the point giving the direction
  double alpha = 0.5;      // biased interpolation weight, in (0, 1)
  std::string name;        // registered rules

  static SectionDescriptor midpoint();
  static SectionDescriptor add_near(std::size_t anchor, std::size_t toward);
  static SectionDescriptor biased(double alpha);
  static SectionDescriptor registered(std::string name);

  // "midpoint" | "add-near:i,j" (1-based labels) | "biased:a" | a registered name.
  static SectionDescriptor parse(const std::string& text);
  std::string describe() const;

  bool applicable(std::size_t n) const;
  bool declared_equivariant() const;
};

// Registered rules return only the added point; augmentation and validation
// are uniform in apply_section.
using SectionFn = std::function<Point(const Configuration&)>;

class SectionRegistry {
 public:
  struct Entry {
    SectionFn fn;
    bool equivariant = false;
  };

  // Process-wide registry, preloaded with the symmetric candidate rules
  // "centroid", "half-centroid" and "negated-centroid" used as obstruction
  // fixtures.
  static SectionRegistry& global();

  void add(const std::string& name, SectionFn fn, bool equivariant);
  bool contains(const std::string& name) const;
  const Entry& at(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Entry> entries_;
};

// The point the rule would append, without validation.
Point added_point(const SectionDescriptor& s, const Configuration& c);

// Appends the rule's point in slot 0 and validates the result.
Configuration apply_section(const SectionDescriptor& s, const Configuration& c);

struct SectionCheckOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  enum class Equivariance { Auto, On, Off };
  Equivariance equivariance = Equivariance::Auto;
  double gap_eps = kGapEps;
  double ball_eps = kBallEps;
  double equivariance_tol = 1e-12;
  std::size_t max_witnesses = 3;
};

struct SectionCheckReport {
  std::string section;
  std::size_t n = 0;
  Eigen::Index m = 0;
  std::size_t samples_run = 0;

  // Aggregates over all samples: smallest added-point gap and largest
  // containment excess observed.
  double worst_gap = 0.0;
  double worst_containment_excess = 0.0;

  std::size_t section_property_violations = 0;
  bool equivariance_checked = false;
  std::size_t equivariance_violations = 0;
  double worst_equivariance_deviation = 0.0;

  double gap_eps = kGapEps;
  double ball_eps = kBallEps;

  std::vector<Configuration> section_witnesses;
  std::vector<Configuration> equivariance_witnesses;

  bool passed() const;
};

// Draws seeded random configurations, applies the rule and checks the section
// contract: forget_point(s(c)) == c bit-exactly, added-point gap > gap_eps,
// containment within ball_eps. Equivariance (s(sigma c) = sigma-hat s(c),
// compared through canonical forms) is checked for rules declared equivariant,
// or as forced by the options.
SectionCheckReport verify_section(const SectionDescriptor& s, std::size_t n, Eigen::Index m,
                                  const SectionCheckOptions& opts = {});

}  // namespace ballconfig
