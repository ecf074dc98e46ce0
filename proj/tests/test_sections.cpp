#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballconfig/sections.hpp"

#include <algorithm>
#include <cmath>

using namespace ballconfig;

namespace {

Point pt(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index k = 0;
  for (double v : coords) p[k++] = v;
  return p;
}

Configuration config(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Point> pts;
  for (const auto& row : rows) pts.push_back(pt(row));
  return Configuration(std::move(pts));
}

}  // namespace

TEST_CASE("forget_point drops slot 0") {
  const Configuration aug = config({{0.5, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
  const Configuration out = forget_point(aug);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == pt({0.0, 0.0}));
  CHECK(out[1] == pt({1.0, 0.0}));
  CHECK_THROWS_AS(forget_point(config({{0.1, 0.1}})), std::invalid_argument);
}

TEST_CASE("midpoint_section on stated examples") {
  const Configuration a = midpoint_section(config({{-0.5, 0.0}, {0.5, 0.0}}));
  CHECK(bits_equal(a[0], pt({0.0, 0.0})));
  const Configuration b = midpoint_section(config({{0.0, 0.0}, {0.0, 0.8}}));
  CHECK(bits_equal(b[0], pt({0.0, 0.4})));
  // Swapping the inputs gives the same added point, bit for bit.
  const Configuration c1 = config({{0.21, -0.37}, {0.68, 0.11}});
  const Configuration c2 = config({{0.68, 0.11}, {0.21, -0.37}});
  CHECK(bits_equal(midpoint_section(c1)[0], midpoint_section(c2)[0]));
  CHECK_THROWS_AS(midpoint_section(config({{0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}})), std::invalid_argument);
}

TEST_CASE("add_near_section places the point at half the nearest-neighbor distance") {
  // Two points at unit distance: d_0 = 1, so the new point sits at the midpoint.
  CHECK(bits_equal(add_near_section(config({{0.0, 0.0}, {1.0, 0.0}}), 0, 1)[0], pt({0.5, 0.0})));

  // d_0 = 0.2 whichever direction is chosen.
  const Configuration c = config({{0.0, 0.0}, {0.2, 0.0}, {1.0, 0.0}});
  CHECK((add_near_section(c, 0, 1)[0] - pt({0.1, 0.0})).norm() < 1e-15);
  CHECK((add_near_section(c, 0, 2)[0] - pt({0.1, 0.0})).norm() < 1e-15);

  CHECK_THROWS_AS(add_near_section(c, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(add_near_section(config({{0.1, 0.1}}), 0, 1), std::invalid_argument);
}

TEST_CASE("midpoint added-point distance is half the separation") {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Configuration c = sample_configuration(rng, 2, 1 + trial % 4);
    const Configuration aug = midpoint_section(c);
    CHECK((aug[0] - c[0]).norm() == doctest::Approx((c[0] - c[1]).norm() / 2.0).epsilon(1e-12));
    CHECK((aug[0] - c[1]).norm() == doctest::Approx((c[0] - c[1]).norm() / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("add_near anchor distance is d_i/2 within 1e-12 relative error") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Configuration c = sample_configuration(rng, n, 2 + trial % 2);
    const std::size_t anchor = trial % n;
    const std::size_t toward = (anchor + 1) % n;
    const Configuration aug = add_near_section(c, anchor, toward);
    const double d = nearest_neighbor_distance(c, anchor);
    CHECK((aug[0] - c[anchor]).norm() == doctest::Approx(d / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("biased interpolation matches the affine formula and midpoint at 1/2") {
  const Configuration c = config({{0.0, 0.0}, {1.0, 0.0}});
  CHECK(bits_equal(biased_interpolation_section(c, 0.25)[0], pt({0.25, 0.0})));
  const Configuration swapped = config({{1.0, 0.0}, {0.0, 0.0}});
  CHECK(bits_equal(biased_interpolation_section(swapped, 0.25)[0], pt({0.75, 0.0})));
  CHECK(bits_equal(biased_interpolation_section(c, 0.5)[0], midpoint_section(c)[0]));
  CHECK_THROWS_AS(biased_interpolation_section(c, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(biased_interpolation_section(c, 1.0), std::invalid_argument);
}

TEST_CASE("every builtin section leaves the input slots bit-exact") {
  Rng rng(31);
  const std::vector<SectionDescriptor> rules = {
      SectionDescriptor::midpoint(), SectionDescriptor::biased(0.3), SectionDescriptor::add_near(0, 1)};
  for (const auto& s : rules) {
    for (int trial = 0; trial < 100; ++trial) {
      const Configuration c = sample_configuration(rng, 2, 3);
      CHECK(forget_point(apply_section(s, c)) == c);
    }
  }
}

TEST_CASE("descriptor parse and describe round-trip") {
  CHECK(SectionDescriptor::parse("midpoint").kind == SectionKind::Midpoint);
  const auto an = SectionDescriptor::parse("add-near:1,2");
  CHECK(an.anchor == 0);
  CHECK(an.toward == 1);
  CHECK(an.describe() == "add-near:1,2");
  const auto bi = SectionDescriptor::parse("biased:0.25");
  CHECK(bi.alpha == doctest::Approx(0.25));
  CHECK(SectionDescriptor::parse("centroid").kind == SectionKind::Registered);
  CHECK_THROWS_AS(SectionDescriptor::parse("add-near:0,1"), std::invalid_argument);
  CHECK_THROWS_AS(SectionDescriptor::parse("add-near:2,2"), std::invalid_argument);
  CHECK_THROWS_AS(SectionDescriptor::parse("biased:1.5"), std::invalid_argument);
}

TEST_CASE("registry carries the shipped symmetric candidates and rejects unknowns") {
  auto& reg = SectionRegistry::global();
  CHECK(reg.contains("centroid"));
  CHECK(reg.contains("half-centroid"));
  CHECK(reg.contains("negated-centroid"));
  CHECK(reg.at("centroid").equivariant);
  CHECK_THROWS_AS(reg.at("no-such-rule"), std::invalid_argument);

  const Configuration c = config({{-0.5, 0.0}, {0.5, 0.0}, {0.0, 0.6}});
  const Point q = added_point(SectionDescriptor::registered("centroid"), c);
  CHECK((q - pt({0.0, 0.2})).norm() < 1e-15);

  // The collinear witness: the centroid lands exactly on the third point.
  CHECK_THROWS_AS(apply_section(SectionDescriptor::registered("centroid"),
                                config({{-0.5, 0.0}, {0.5, 0.0}, {0.0, 0.0}})),
                  std::invalid_argument);
}

TEST_CASE("verify_section passes the valid builtins") {
  SectionCheckOptions opts;
  opts.samples = 2000;
  opts.seed = 5;

  const auto mid = verify_section(SectionDescriptor::midpoint(), 2, 3, opts);
  CHECK(mid.passed());
  CHECK(mid.section_property_violations == 0);
  CHECK(mid.equivariance_checked);
  CHECK(mid.equivariance_violations == 0);
  CHECK(mid.worst_equivariance_deviation == 0.0);
  CHECK(mid.worst_gap > kGapEps);
  CHECK(mid.worst_containment_excess <= kBallEps);

  const auto an = verify_section(SectionDescriptor::add_near(0, 1), 5, 2, opts);
  CHECK(an.passed());
  CHECK(an.section_property_violations == 0);
  CHECK_FALSE(an.equivariance_checked);
}

TEST_CASE("verify_section flags the biased rule as non-equivariant when probed") {
  SectionCheckOptions opts;
  opts.samples = 500;
  opts.seed = 5;
  opts.equivariance = SectionCheckOptions::Equivariance::On;
  const auto rep = verify_section(SectionDescriptor::biased(0.25), 2, 2, opts);
  CHECK(rep.section_property_violations == 0);
  CHECK(rep.equivariance_violations > 0);
  CHECK(rep.worst_equivariance_deviation > 1e-3);
  CHECK_FALSE(rep.passed());
  CHECK(rep.equivariance_witnesses.size() > 0);
}

TEST_CASE("verify_section reports are deterministic under a fixed seed") {
  SectionCheckOptions opts;
  opts.samples = 300;
  opts.seed = 77;
  const auto a = verify_section(SectionDescriptor::add_near(0, 1), 3, 2, opts);
  const auto b = verify_section(SectionDescriptor::add_near(0, 1), 3, 2, opts);
  CHECK(a.worst_gap == b.worst_gap);
  CHECK(a.worst_containment_excess == b.worst_containment_excess);
  CHECK(a.samples_run == b.samples_run);
}

TEST_CASE("sampled continuity: midpoint is 1-Lipschitz in the sup metric") {
  Rng rng(101);
  int tested = 0;
  while (tested < 300) {
    const Configuration c = sample_configuration(rng, 2, 3);
    std::vector<Point> moved;
    for (const Point& p : c.points()) {
      const Point q = p + 1e-5 * rng.point_in_ball(3);
      if (q.norm() > 1.0) {
        moved.clear();
        break;
      }
      moved.push_back(q);
    }
    if (moved.size() != 2) continue;
    const Configuration cp(3, moved);
    const double h = config_distance(c, cp);
    if (h == 0.0) continue;
    CHECK(config_distance(midpoint_section(c), midpoint_section(cp)) <= 1.0 * h + 1e-15);
    ++tested;
  }
}

TEST_CASE("sampled continuity: add_near is 10-Lipschitz away from nearest-neighbor ties") {
  Rng rng(102);
  int tested = 0;
  while (tested < 300) {
    const Configuration c = sample_configuration(rng, 4, 2);
    // Exclude samples where the two smallest distances from the anchor nearly tie.
    std::vector<double> dists;
    for (std::size_t k = 1; k < 4; ++k) dists.push_back((c[k] - c[0]).norm());
    std::sort(dists.begin(), dists.end());
    if (dists[1] - dists[0] < 1e-3) continue;

    std::vector<Point> moved;
    for (const Point& p : c.points()) {
      const Point q = p + 1e-5 * rng.point_in_ball(2);
      if (q.norm() > 1.0) {
        moved.clear();
        break;
      }
      moved.push_back(q);
    }
    if (moved.size() != 4) continue;
    const Configuration cp(2, moved);
    const double h = config_distance(c, cp);
    if (h == 0.0) continue;
    CHECK(config_distance(add_near_section(c, 0, 1), add_near_section(cp, 0, 1)) <= 10.0 * h);
    ++tested;
  }
}
