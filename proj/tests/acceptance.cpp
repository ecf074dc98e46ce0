// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include "ballconfig/geometry.hpp"
#include "ballconfig/homotopy.hpp"
#include "ballconfig/json_io.hpp"
#include "ballconfig/obstruction.hpp"
#include "ballconfig/random.hpp"
#include "ballconfig/sections.hpp"
#include "ballconfig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace ballconfig;

namespace {

int failures = 0;
std::ostringstream detail;

void require(bool cond, const std::string& what) {
  if (!cond) {
    detail << "    requirement failed: " << what << "\n";
    throw std::runtime_error(what);
  }
}

void run_criterion(int id, const std::string& label, const std::function<void()>& body) {
  detail.str("");
  bool ok = true;
  try {
    body();
  } catch (const std::exception& e) {
    ok = false;
    detail << "    " << e.what() << "\n";
  }
  std::cout << "criterion " << id << " [" << (ok ? "PASS" : "FAIL") << "] " << label << "\n";
  if (!ok) {
    std::cout << detail.str();
    ++failures;
  }
}

Point pt2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

// ---------------------------------------------------------------------------
// 1. Section suite: midpoint (n = 2) and three add-near label choices pass the
//    sampled contract over the (m, n) grid with zero violations.
void criterion_sections() {
  const std::vector<Eigen::Index> dims = {1, 2, 3, 5};
  const std::vector<std::size_t> counts = {2, 3, 4, 6};
  for (Eigen::Index m : dims) {
    for (std::size_t n : counts) {
      std::vector<SectionDescriptor> rules;
      if (n == 2) {
        // Only two ordered label pairs exist at n = 2.
        rules = {SectionDescriptor::midpoint(), SectionDescriptor::add_near(0, 1),
                 SectionDescriptor::add_near(1, 0)};
      } else {
        rules = {SectionDescriptor::add_near(0, 1), SectionDescriptor::add_near(1, 0),
                 SectionDescriptor::add_near(0, 2)};
      }
      for (const auto& s : rules) {
        SectionCheckOptions opts;
        opts.samples = 10000;
        opts.seed = 1000 + static_cast<std::uint64_t>(m) * 10 + n;
        opts.equivariance = SectionCheckOptions::Equivariance::Off;
        const auto rep = verify_section(s, n, m, opts);
        std::ostringstream at;
        at << s.describe() << " at (m=" << m << ", n=" << n << ")";
        require(rep.samples_run == 10000, at.str() + ": ran all samples");
        require(rep.section_property_violations == 0, at.str() + ": zero violations");
        require(rep.worst_gap > 1e-9, at.str() + ": added-point gap > 1e-9");
        require(rep.worst_containment_excess <= 1e-12, at.str() + ": containment within 1e-12");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 2. Equivariance: midpoint exact on 10^4 samples; biased(0.25) records
//    violations as the negative control.
void criterion_equivariance() {
  SectionCheckOptions opts;
  opts.samples = 10000;
  opts.seed = 7;
  opts.equivariance = SectionCheckOptions::Equivariance::On;

  for (Eigen::Index m : {2, 3}) {
    const auto rep = verify_section(SectionDescriptor::midpoint(), 2, m, opts);
    require(rep.equivariance_checked, "midpoint: equivariance probed");
    require(rep.equivariance_violations == 0, "midpoint: zero equivariance violations");
    require(rep.worst_equivariance_deviation == 0.0, "midpoint: deviation exactly zero");
    require(rep.passed(), "midpoint: report passes");
  }

  const auto biased = verify_section(SectionDescriptor::biased(0.25), 2, 2, opts);
  require(biased.section_property_violations == 0, "biased: still a valid section");
  require(biased.equivariance_violations > 0, "biased: records equivariance violations");
}

// ---------------------------------------------------------------------------
// 3. Homotopy suite over three rules, m in {1, 2, 3}, 10^3 configurations.
void criterion_homotopy() {
  const std::vector<SectionDescriptor> rules = {
      SectionDescriptor::midpoint(), SectionDescriptor::biased(0.25), SectionDescriptor::add_near(0, 1)};
  for (Eigen::Index m : {1, 2, 3}) {
    Rng rng(900 + static_cast<std::uint64_t>(m));
    for (int k = 0; k < 1000; ++k) {
      const Configuration c = sample_configuration(rng, 2, m);
      for (const auto& s : rules) {
        const auto trace = uniqueness_homotopy(s, c, 64);
        require(config_distance(trace.frames.front(), apply_section(s, c)) <= 1e-12,
                "frame 0 matches the rule within 1e-12");
        require(config_distance(trace.frames.back(), midpoint_section(c)) <= 1e-10,
                "final frame matches the midpoint within 1e-10");
        const Point mid = added_point(SectionDescriptor::midpoint(), c);
        for (const Configuration& frame : trace.frames) {
          require(forget_point(frame) == c, "every frame is a section output over c");
          if (s.kind == SectionKind::Midpoint) {
            require((frame[0] - mid).norm() <= 1e-10, "midpoint track constant within 1e-10");
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Chord geometry oracle on 10^4 random 2-configurations plus the worked
//    symmetric example with exact values.
void criterion_chord() {
  const std::vector<Eigen::Index> dims = {1, 2, 3, 5};
  Rng rng(4);
  for (int k = 0; k < 10000; ++k) {
    const Eigen::Index m = dims[static_cast<std::size_t>(k) % dims.size()];
    const Configuration c = sample_configuration(rng, 2, m);
    const auto cd = chord_data(c);
    require(cd.ratio >= 1.0, "ratio >= 1");
    if (!cd.degenerate) {
      require((cd.q1 - cd.center - cd.ratio * (c[0] - cd.center)).norm() <= 1e-10,
              "q1 - x = r (p1 - x) within 1e-10");
      require((cd.q2 - cd.center - cd.ratio * (c[1] - cd.center)).norm() <= 1e-10,
              "q2 - x = r (p2 - x) within 1e-10");
    }
    require(std::abs(scale_map(cd, 1.0, c[0]).norm() - 1.0) <= 1e-10, "h1(p1) lands on the sphere");
    require(std::abs(scale_map(cd, 1.0, c[1]).norm() - 1.0) <= 1e-10, "h1(p2) lands on the sphere");
  }

  const auto cd = chord_data(Configuration(2, {pt2(-0.5, 0.0), pt2(0.5, 0.0)}));
  require(cd.ratio == 2.0, "worked example: r = 2 exactly");
  require(cd.center[0] == 0.0 && cd.center[1] == 0.0, "worked example: x = (0, 0) exactly");
}

// ---------------------------------------------------------------------------
// 5. Boundary pushoff at t = ln 2 on 10^3 configurations anchored to the sphere.
void criterion_pushoff() {
  Rng rng(5);
  const double t = std::log(2.0);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k) % 4;
    const Eigen::Index m = (k % 2 == 0) ? 2 : 3;
    std::vector<Point> pts;
    pts.push_back(rng.unit_vector(m));
    while (pts.size() < n) {
      const Point q = rng.point_in_ball(m);
      bool ok = true;
      for (const Point& p : pts) ok = ok && (q - p).norm() >= 1e-2;
      if (ok) pts.push_back(q);
    }
    const Configuration c(m, pts);
    const double gap = min_pairwise_gap(c);
    const Configuration out = boundary_pushoff(c, t);
    require(bits_equal(out[0], c[0]), "anchor fixed bit-exactly");
    for (std::size_t i = 1; i < n; ++i) require(out[i].norm() < 1.0, "non-anchor points strictly interior");
    require(std::abs(min_pairwise_gap(out) - gap / 2.0) <= 1e-12, "gap halves within 1e-12");
  }
}

// ---------------------------------------------------------------------------
// 6. Winding engine: circles, reversal, concatenation, refinement, pair symmetry.
void criterion_winding() {
  auto circle = [](std::size_t k, int turns) {
    std::vector<Eigen::Vector2d> vs;
    for (std::size_t i = 0; i < k; ++i) {
      const double theta = 2.0 * std::numbers::pi * turns * static_cast<double>(i) / static_cast<double>(k);
      vs.emplace_back(std::cos(theta), std::sin(theta));
    }
    vs.push_back(vs.front());
    return vs;
  };

  for (std::size_t k : {std::size_t{64}, std::size_t{256}}) {
    require(winding_number(circle(k, 1)) == 1, "unit circle winds once");
    auto reversed = circle(k, 1);
    std::reverse(reversed.begin(), reversed.end());
    require(winding_number(reversed) == -1, "reversed circle winds -1");
    require(winding_number(circle(k, 2)) == 2, "doubled circle winds twice");
  }
  require(winding_number(circle(64, 1)) == winding_number(circle(128, 1)), "refinement invariance");
  require(winding_number(circle(200, 3)) == winding_number(circle(400, 3)), "refinement invariance x3");

  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial) % 4;
    const Configuration base = default_obstruction_base(n, static_cast<std::uint64_t>(trial));
    const std::size_t a = static_cast<std::size_t>(rng.next_u64() % n);
    std::size_t b = static_cast<std::size_t>(rng.next_u64() % n);
    if (b == a) b = (a + 1) % n;
    const LoopSample loop = generator_loop(base, a, b, 0.05, 128);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        require(gauss_winding(loop, i, j) == gauss_winding(loop, j, i),
                "planar gauss windings are pair-symmetric");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Obstruction identity, positive case: midpoint at n = 2 over 10 seeded
//    bases and three radii.
void criterion_identity_positive() {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Configuration base = default_obstruction_base(2, seed);
    for (double radius : {0.05, 0.1, 0.2}) {
      const auto rep = measure_coefficients(SectionDescriptor::midpoint(), base, radius, 256);
      require(!rep.collision.has_value(), "no collision for the midpoint rule");
      require(rep.lambda_values.at(2) == 1, "lambda = 1");
      require(rep.lambda_consistent, "lambda consistent");
      require(rep.identity_holds, "identity holds at n = 2");
    }
  }
}

// ---------------------------------------------------------------------------
// 8. Obstruction, negative cases at n = 3: the centroid candidate collides on
//    the explicit collinear witness loop; every shipped symmetric candidate
//    fails by collision or by the identity.
void criterion_negative_cases() {
  // p3 circles through the origin while p1 + p2 = 0: at the lowest frame the
  // configuration is collinear and the centroid coincides with p3.
  const Configuration base(2, {pt2(-0.5, 0.0), pt2(0.5, 0.0), pt2(0.0, 0.2)});
  std::vector<Configuration> frames;
  const std::size_t K = 64;
  for (std::size_t i = 0; i < K; ++i) {
    const double theta =
        -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(K);
    frames.push_back(base.with_replaced(2, pt2(0.1 * std::cos(theta), 0.1 + 0.1 * std::sin(theta))));
  }
  frames.push_back(frames.front());
  const LoopSample witness_loop(std::move(frames));

  // The first frame itself is the explicit witness: the centroid lands on p3.
  const Point q = added_point(SectionDescriptor::registered("centroid"), witness_loop.frames().front());
  require((q - witness_loop.frames().front()[2]).norm() <= 1e-9,
          "collinear frame: centroid coincides with p3");

  const auto rep = measure_coefficients(SectionDescriptor::registered("centroid"), base, 0.05, 256,
                                        {{"collinear-witness", witness_loop}});
  require(rep.collision.has_value(), "centroid candidate produces a collision witness");
  require(rep.collision->loop == "collinear-witness", "witness names the collinear loop");
  require(rep.collision->slot_a == 0 && rep.collision->slot_b == 3, "witness names the colliding slots");
  require(!rep.identity_holds, "collision implies the identity fails");

  for (const char* name : {"centroid", "half-centroid", "negated-centroid"}) {
    const auto fixture = measure_coefficients(SectionDescriptor::registered(name),
                                              default_obstruction_base(3, 1), 0.1, 256);
    require(fixture.collision.has_value() || !fixture.identity_holds,
            std::string(name) + ": fails by collision or identity");
  }
}

// ---------------------------------------------------------------------------
// 9. Solver: contraction fixed point, centroid family, and the n = 2
//    non-convergence consistency check.
void criterion_solver() {
  FixedSearchOptions opts;
  opts.seed = 9;

  const auto contraction = find_fixed_configuration(
      PointMapDescriptor::contraction(0.5, pt2(0.6, 0.0)), 1, 2, opts);
  require(contraction.converged, "n = 1 contraction converges");
  require((contraction.best[0] - pt2(0.6, 0.0)).norm() <= 1e-6, "fixed point (0.6, 0) within 1e-6");
  require(contraction.evaluations < 10000, "under 10^4 evaluations");

  const auto centroid3 = find_fixed_configuration(PointMapDescriptor::centroid(), 3, 2, opts);
  require(centroid3.converged, "n = 3 centroid converges");
  require(centroid3.residual < 1e-6, "n = 3 centroid residual < 1e-6");

  const auto centroid2 = find_fixed_configuration(PointMapDescriptor::centroid(), 2, 2, opts);
  require(!centroid2.converged, "n = 2 midpoint map does not converge");
  require(centroid2.residual > 1e-4, "n = 2 best residual stays above 1e-4");
}

// ---------------------------------------------------------------------------
// 10. Determinism: randomized reports are bit-identical across reruns.
void criterion_determinism() {
  SectionCheckOptions vopts;
  vopts.samples = 10000;
  vopts.seed = 11;
  vopts.equivariance = SectionCheckOptions::Equivariance::On;
  const auto v1 = report_to_json(verify_section(SectionDescriptor::midpoint(), 2, 3, vopts)).dump();
  const auto v2 = report_to_json(verify_section(SectionDescriptor::midpoint(), 2, 3, vopts)).dump();
  require(v1 == v2, "verify reports identical");

  const auto o1 =
      report_to_json(measure_coefficients(SectionDescriptor::midpoint(), default_obstruction_base(2, 3),
                                          0.1, 256))
          .dump();
  const auto o2 =
      report_to_json(measure_coefficients(SectionDescriptor::midpoint(), default_obstruction_base(2, 3),
                                          0.1, 256))
          .dump();
  require(o1 == o2, "obstruction reports identical");

  FixedSearchOptions fopts;
  fopts.seed = 13;
  const auto f1 = result_to_json(find_fixed_configuration(PointMapDescriptor::centroid(), 3, 2, fopts)).dump();
  const auto f2 = result_to_json(find_fixed_configuration(PointMapDescriptor::centroid(), 3, 2, fopts)).dump();
  require(f1 == f2, "solver results identical");

  Rng r1(21);
  Rng r2(21);
  for (int k = 0; k < 100; ++k) {
    require(sample_configuration(r1, 4, 3) == sample_configuration(r2, 4, 3), "sampler streams identical");
  }
}

}  // namespace

int main() {
  run_criterion(1, "section suite over the (m, n) grid", criterion_sections);
  run_criterion(2, "midpoint equivariance exact; biased control flagged", criterion_equivariance);
  run_criterion(3, "homotopy suite: endpoints, validity, constant midpoint track", criterion_homotopy);
  run_criterion(4, "chord geometry oracle and the worked example", criterion_chord);
  run_criterion(5, "boundary pushoff at ln 2", criterion_pushoff);
  run_criterion(6, "winding engine and pair symmetry", criterion_winding);
  run_criterion(7, "obstruction identity holds for the midpoint at n = 2", criterion_identity_positive);
  run_criterion(8, "n = 3 candidates fail: collision witness and identity violations", criterion_negative_cases);
  run_criterion(9, "fixed-configuration solver behavior", criterion_solver);
  run_criterion(10, "determinism across reruns", criterion_determinism);

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
