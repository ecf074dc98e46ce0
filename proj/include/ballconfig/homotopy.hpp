#pragma once

#include "ballconfig/geometry.hpp"
#include "ballconfig/sections.hpp"

#include <string>
#include <vector>

namespace ballconfig {

// Collinearity tolerance for the between-or-off-line test.
inline constexpr double kColEps = 1e-9;

// Geometry of the chord through a 2-point configuration: the two sphere
// intersections q1, q2 (q1 on p1's side of the chord), the center x from which
// q_i - x = r (p_i - x) for both endpoints, and the common ratio r >= 1.
struct ChordData {
  Point q1;
  Point q2;
  Point center;
  double ratio = 1.0;
  // Both endpoints already on the sphere: the scaling is the identity and the
  // center is reported as the midpoint.
  bool degenerate = false;
};

ChordData chord_data(const Configuration& c);

// h_t(v) = ((1-t) + r t)(v - x) + x. Identity at t = 0; maps p_i to q_i at t = 1.
Point scale_map(const ChordData& cd, double t, const Point& v);

// Exact algebraic inverse of h_t.
Point scale_map_inverse(const ChordData& cd, double t, const Point& v);

// s_t(c): expand the chord endpoints by h_t, apply the rule there, pull the
// added point back by h_t^{-1}. Slots 1..2 carry the original points bit-exact,
// so the section property is exact by construction.
Configuration conjugated_section(const SectionDescriptor& s, const Configuration& c, double t);

// True iff p0 sits strictly between p1 and p2 on their chord, or off the line
// through them (by more than eps in the orthogonal component).
bool between_or_offline(const Point& p0, const Point& p1, const Point& p2, double eps = kColEps);

enum class HomotopyPhase { Scaling, Line };

const char* phase_name(HomotopyPhase phase);

// Sampled two-phase deformation of a rule onto the midpoint rule: the grid is
// strictly increasing over [0, 1] with the scaling phase on [0, 1/2] and the
// straight-line phase on (1/2, 1].
struct HomotopyTrace {
  std::vector<double> grid;
  std::vector<Configuration> frames;
  std::vector<HomotopyPhase> phases;
};

// frames_per_phase frames sample the conjugation phase; the straight-line
// phase adds frames_per_phase - 1 more. The final frame equals
// midpoint_section(c). Throws if a frame stops being a valid section output
// (possible only for misbehaved registered rules).
HomotopyTrace uniqueness_homotopy(const SectionDescriptor& s, const Configuration& c,
                                  std::size_t frames_per_phase = 64);

// Flow of the field -(p - p1) for time t: p -> p1 + e^{-t} (p - p1), applied to
// every point. Requires the first point to lie on the unit sphere; it stays
// fixed bit-exactly while every other point contracts toward it.
Configuration boundary_pushoff(const Configuration& c, double t);

}  // namespace ballconfig
