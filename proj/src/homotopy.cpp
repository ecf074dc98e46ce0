#include "ballconfig/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ballconfig {

namespace {

constexpr double kDegenerateRatio = 1e-12;  // r - 1 below this: both points on the sphere

}  // namespace

ChordData chord_data(const Configuration& c) {
  if (c.size() != 2) throw std::invalid_argument("chord_data: requires exactly 2 points");
  const Point& p1 = c[0];
  const Point& p2 = c[1];
  const Point w = p2 - p1;
  const double ww = w.squaredNorm();

  // Roots of |p1 + u w|^2 = 1. Both points lie in the closed ball, so
  // u_minus <= 0 and u_plus >= 1: q1 sits on p1's side, q2 on p2's side.
  const double b = p1.dot(w);
  const double cc = p1.squaredNorm() - 1.0;
  const double disc = std::max(b * b - ww * cc, 0.0);
  const double sq = std::sqrt(disc);
  const double u_minus = (-b - sq) / ww;
  const double u_plus = (-b + sq) / ww;

  ChordData cd;
  cd.q1 = p1 + u_minus * w;
  cd.q2 = p1 + u_plus * w;
  cd.ratio = u_plus - u_minus;  // |q2 - q1| / |p2 - p1| along the common direction

  if (cd.ratio <= 1.0 + kDegenerateRatio) {
    // Both points already on the boundary: any center works for the identity
    // map; report the midpoint.
    cd.ratio = 1.0;
    cd.degenerate = true;
    cd.center = 0.5 * (p1 + p2);
    return cd;
  }

  // Line coordinates from p1 along the unit chord direction: p1 at 0, q1 at
  // A = u_minus |w|. The equal-ratio conditions q_i - x = r (p_i - x) reduce to
  // x = (A - r * 0) / (1 - r) on the line.
  const double len = std::sqrt(ww);
  const double xi = (u_minus * len) / (1.0 - cd.ratio);
  cd.center = p1 + (xi / len) * w;
  return cd;
}

Point scale_map(const ChordData& cd, double t, const Point& v) {
  if (cd.degenerate || t == 0.0) return v;
  const double factor = (1.0 - t) + cd.ratio * t;
  return factor * (v - cd.center) + cd.center;
}

Point scale_map_inverse(const ChordData& cd, double t, const Point& v) {
  if (cd.degenerate || t == 0.0) return v;
  const double factor = (1.0 - t) + cd.ratio * t;
  return (v - cd.center) / factor + cd.center;
}

namespace {

// Added point of the conjugated rule, with the chord geometry precomputed.
Point conjugated_added_point(const ChordData& cd, const SectionDescriptor& s,
                             const Configuration& c, double t) {
  const Configuration expanded(c.dim(), {scale_map(cd, t, c[0]), scale_map(cd, t, c[1])});
  return scale_map_inverse(cd, t, added_point(s, expanded));
}

}  // namespace

Configuration conjugated_section(const SectionDescriptor& s, const Configuration& c, double t) {
  if (c.size() != 2) throw std::invalid_argument("conjugated_section: requires exactly 2 points");
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("conjugated_section: t must lie in [0, 1]");
  const ChordData cd = chord_data(c);
  return c.with_prepended(conjugated_added_point(cd, s, c, t));
}

bool between_or_offline(const Point& p0, const Point& p1, const Point& p2, double eps) {
  const Point w = p2 - p1;
  const double ww = w.squaredNorm();
  if (ww == 0.0) throw std::invalid_argument("between_or_offline: p1 and p2 coincide");
  const double u = (p0 - p1).dot(w) / ww;
  const Point orth = (p0 - p1) - u * w;
  if (orth.norm() > eps) return true;
  return u > eps && u < 1.0 - eps;
}

const char* phase_name(HomotopyPhase phase) {
  return phase == HomotopyPhase::Scaling ? "scaling" : "line";
}

HomotopyTrace uniqueness_homotopy(const SectionDescriptor& s, const Configuration& c,
                                  std::size_t frames_per_phase) {
  if (c.size() != 2) throw std::invalid_argument("uniqueness_homotopy: requires exactly 2 points");
  if (frames_per_phase < 2) throw std::invalid_argument("uniqueness_homotopy: need at least 2 frames per phase");

  const std::size_t T = frames_per_phase;
  const ChordData cd = chord_data(c);

  HomotopyTrace trace;
  trace.grid.reserve(2 * T - 1);
  trace.frames.reserve(2 * T - 1);
  trace.phases.reserve(2 * T - 1);

  auto push_frame = [&](double global_t, Point p0, HomotopyPhase phase, const char* what) {
    const double gap = std::min((p0 - c[0]).norm(), (p0 - c[1]).norm());
    if (gap <= kGapEps) {
      std::ostringstream os;
      os << "uniqueness_homotopy: '" << s.describe() << "' stops being a section during the " << what
         << " phase at t = " << global_t << ": added-point gap " << gap << " is below " << kGapEps;
      throw std::runtime_error(os.str());
    }
    trace.frames.push_back(c.with_prepended(std::move(p0)));
    trace.grid.push_back(global_t);
    trace.phases.push_back(phase);
  };

  for (std::size_t k = 0; k < T; ++k) {
    const double local = static_cast<double>(k) / static_cast<double>(T - 1);
    push_frame(0.5 * local, conjugated_added_point(cd, s, c, local), HomotopyPhase::Scaling, "scaling");
  }

  const Point start = trace.frames.back()[0];
  if (!between_or_offline(start, c[0], c[1])) {
    std::ostringstream os;
    os << "uniqueness_homotopy: after the scaling phase, the added point of '" << s.describe()
       << "' lies on the chord outside the open segment";
    throw std::runtime_error(os.str());
  }

  const Point target = added_point(SectionDescriptor::midpoint(), c);
  for (std::size_t k = 1; k < T; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(T - 1);
    push_frame(0.5 + 0.5 * u, Point((1.0 - u) * start + u * target), HomotopyPhase::Line, "line");
  }
  return trace;
}

Configuration boundary_pushoff(const Configuration& c, double t) {
  if (t < 0.0) throw std::invalid_argument("boundary_pushoff: time must be nonnegative");
  if (std::abs(c[0].norm() - 1.0) > kBallEps) {
    throw std::invalid_argument("boundary_pushoff: the first point must lie on the unit sphere");
  }
  const double factor = std::exp(-t);
  const Point& anchor = c[0];
  std::vector<Point> pts;
  pts.reserve(c.size());
  pts.push_back(anchor);  // fixed point of the flow, copied bit-exactly
  for (std::size_t k = 1; k < c.size(); ++k) {
    pts.push_back(anchor + factor * (c[k] - anchor));
  }
  return Configuration(c.dim(), std::move(pts));
}

}  // namespace ballconfig
