#include "ballconfig/obstruction.hpp"

#include "ballconfig/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ballconfig {

int winding_number(const std::vector<Eigen::Vector2d>& vs, double eps) {
  if (vs.size() < 2) throw std::invalid_argument("winding_number: need a closed sequence of vectors");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].norm() <= eps) {
      std::ostringstream os;
      os << "winding_number: near-zero vector at step " << i << " (norm " << vs[i].norm() << ")";
      throw WindingError(WindingFailure::NearZeroVector, i, os.str());
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const Eigen::Vector2d& a = vs[i];
    const Eigen::Vector2d& b = vs[i + 1];
    const double cross = a.x() * b.y() - a.y() * b.x();
    const double angle = std::atan2(cross, a.dot(b));
    if (std::abs(angle) >= std::numbers::pi / 2.0) {
      std::ostringstream os;
      os << "winding_number: angular step " << angle << " at step " << i << " exceeds pi/2";
      throw WindingError(WindingFailure::Undersampled, i, os.str());
    }
    total += angle;
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const long long rounded = std::llround(turns);
  if (std::abs(turns - static_cast<double>(rounded)) >= 0.01) {
    std::ostringstream os;
    os << "winding_number: total turning " << turns << " is not integral";
    throw WindingError(WindingFailure::NonIntegral, vs.size() - 1, os.str());
  }
  return static_cast<int>(rounded);
}

LoopSample::LoopSample(std::vector<Configuration> frames) : frames_(std::move(frames)) {
  if (frames_.size() < 2) throw std::invalid_argument("LoopSample: need at least two frames");
  const std::size_t n = frames_.front().size();
  for (const Configuration& f : frames_) {
    if (f.dim() != 2) throw std::invalid_argument("LoopSample: frames must be planar (m = 2)");
    if (f.size() != n) throw std::invalid_argument("LoopSample: frames must share the point count");
  }
  if (frames_.front() != frames_.back()) {
    throw std::invalid_argument("LoopSample: loop is not closed (first frame != last frame)");
  }
}

int gauss_winding(const LoopSample& loop, std::size_t a, std::size_t b, double eps) {
  const std::size_t n = loop.points_per_frame();
  if (a == b || a >= n || b >= n) throw std::invalid_argument("gauss_winding: slots must be distinct and valid");
  std::vector<Eigen::Vector2d> dirs;
  dirs.reserve(loop.frames().size());
  for (const Configuration& f : loop.frames()) {
    const Point v = f[b] - f[a];
    dirs.emplace_back(v[0], v[1]);
  }
  return winding_number(dirs, eps);
}

LoopSample generator_loop(const Configuration& base, std::size_t a, std::size_t b, double radius,
                          std::size_t samples) {
  const std::size_t n = base.size();
  if (base.dim() != 2) throw std::invalid_argument("generator_loop: base must be planar (m = 2)");
  if (a == b || a >= n || b >= n) throw std::invalid_argument("generator_loop: slots must be distinct and valid");
  if (!(radius > 0.0)) throw std::invalid_argument("generator_loop: radius must be positive");
  if (samples < 8) throw std::invalid_argument("generator_loop: need at least 8 samples");

  const Point& center = base[a];
  if (center.norm() + radius > 1.0) {
    throw std::invalid_argument("generator_loop: the orbit leaves the unit ball");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k == a || k == b) continue;
    if ((base[k] - center).norm() - radius <= 2.0 * radius) {
      std::ostringstream os;
      os << "generator_loop: point " << k << " is within the 2-radius margin of the orbit";
      throw std::invalid_argument(os.str());
    }
  }

  std::vector<Configuration> frames;
  frames.reserve(samples + 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
    Point orbit(2);
    orbit << center[0] + radius * std::cos(theta), center[1] + radius * std::sin(theta);
    frames.push_back(base.with_replaced(b, orbit));
  }
  frames.push_back(frames.front());  // bit-exact closure
  LoopSample loop(std::move(frames));

  // The loop must pair to 1 with its own generator and to 0 with every other.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int expected = (i == std::min(a, b) && j == std::max(a, b)) ? 1 : 0;
      if (gauss_winding(loop, i, j) != expected) {
        std::ostringstream os;
        os << "generator_loop: duality check failed on pair (" << i << ", " << j << ")";
        throw std::logic_error(os.str());
      }
    }
  }
  return loop;
}

ImagePairWinding image_pair_winding(const SectionDescriptor& s, const LoopSample& loop,
                                    const std::string& loop_id, double eps) {
  const std::size_t n = loop.points_per_frame();
  std::vector<Configuration> image;
  image.reserve(loop.frames().size());
  for (std::size_t idx = 0; idx < loop.frames().size(); ++idx) {
    const Configuration& frame = loop.frames()[idx];
    const Point p0 = added_point(s, frame);
    double gap = std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = (p0 - frame[k]).norm();
      if (d < gap) {
        gap = d;
        nearest = k;
      }
    }
    if (gap <= eps) {
      return ImagePairWinding{std::nullopt, CollisionWitness{loop_id, idx, 0, nearest + 1}};
    }
    image.push_back(frame.with_prepended(p0));
  }
  return ImagePairWinding{gauss_winding(LoopSample(std::move(image)), 0, 1, eps), std::nullopt};
}

Configuration default_obstruction_base(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("default_obstruction_base: need n >= 1");
  Rng rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    Point p(2);
    p << 0.6 * std::cos(angle) + rng.uniform(-0.01, 0.01),
        0.6 * std::sin(angle) + rng.uniform(-0.01, 0.01);
    pts.push_back(p);
  }
  return Configuration(2, std::move(pts));
}

namespace {

// One coefficient: build the generator loop, map it through the rule, read the
// winding of the (added, p1) pair. Undersampled loops retry with doubled
// density up to the cap.
ImagePairWinding measure_one(const SectionDescriptor& s, const Configuration& base, std::size_t a,
                             std::size_t b, double radius, std::size_t samples,
                             const std::string& loop_id) {
  for (std::size_t k = samples;; k *= 2) {
    try {
      return image_pair_winding(s, generator_loop(base, a, b, radius, k), loop_id);
    } catch (const WindingError& e) {
      if (e.kind() == WindingFailure::Undersampled && 2 * k <= kMaxLoopSamples) continue;
      throw;
    }
  }
}

}  // namespace

ObstructionReport measure_coefficients(const SectionDescriptor& s, const Configuration& base,
                                       double radius, std::size_t samples,
                                       const std::vector<NamedLoop>& probes) {
  const std::size_t n = base.size();
  if (base.dim() != 2) throw std::invalid_argument("measure_coefficients: base must be planar (m = 2)");
  if (n < 2) throw std::invalid_argument("measure_coefficients: need n >= 2");
  if (!s.applicable(n)) {
    throw std::invalid_argument("measure_coefficients: '" + s.describe() + "' is not applicable to n = " +
                                std::to_string(n));
  }
  if (s.kind == SectionKind::Registered) SectionRegistry::global().at(s.name);  // resolvable up front

  ObstructionReport rep;
  rep.section = s.describe();
  rep.n = n;

  auto fail_with = [&](CollisionWitness witness) {
    rep.collision = std::move(witness);
    rep.lambda_consistent = false;
    rep.identity_holds = false;
    return rep;
  };

  for (const NamedLoop& probe : probes) {
    ImagePairWinding iw = image_pair_winding(s, probe.loop, probe.id);
    if (iw.collision) return fail_with(*iw.collision);
  }

  for (std::size_t label = 2; label <= n; ++label) {
    std::ostringstream id;
    id << "lambda[" << label << "]";
    ImagePairWinding iw = measure_one(s, base, 0, label - 1, radius, samples, id.str());
    if (iw.collision) return fail_with(*iw.collision);
    rep.lambda_values[label] = *iw.winding;
  }
  for (std::size_t la = 2; la <= n; ++la) {
    for (std::size_t lb = la + 1; lb <= n; ++lb) {
      std::ostringstream id;
      id << "delta[" << la << "," << lb << "]";
      ImagePairWinding iw = measure_one(s, base, la - 1, lb - 1, radius, samples, id.str());
      if (iw.collision) return fail_with(*iw.collision);
      rep.delta_values[{la, lb}] = *iw.winding;
    }
  }

  const int lambda = rep.lambda_values.begin()->second;
  rep.lambda_consistent = true;
  for (const auto& [label, value] : rep.lambda_values) {
    if (value != lambda) rep.lambda_consistent = false;
  }
  bool deltas_vanish = true;
  for (const auto& [pair, value] : rep.delta_values) {
    if (value != 0) deltas_vanish = false;
  }
  rep.identity_holds =
      rep.lambda_consistent && deltas_vanish && lambda * static_cast<int>(n - 1) == 1;
  return rep;
}

}  // namespace ballconfig
