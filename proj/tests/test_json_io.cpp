#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ballconfig/json_io.hpp"
#include "ballconfig/random.hpp"

using namespace ballconfig;
using nlohmann::json;

TEST_CASE("configuration JSON round-trips at full double precision") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration c = sample_configuration(rng, 4, 3);
    const Configuration back = config_from_json(config_to_json(c));
    CHECK(back == c);
    // The serialized text itself is stable under a reparse.
    const std::string text = config_to_json(c).dump();
    CHECK(config_to_json(config_from_json(json::parse(text))).dump() == text);
  }
}

TEST_CASE("configuration parser names the offending field") {
  CHECK_THROWS_WITH_AS(config_from_json(json::parse("[1, 2]")),
                       doctest::Contains("expected a JSON object"), std::runtime_error);
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"points": [[0, 0]]})")),
                       doctest::Contains("missing field 'dim'"), std::runtime_error);
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"dim": 2})")),
                       doctest::Contains("missing field 'points'"), std::runtime_error);
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"dim": 2, "points": []})")),
                       doctest::Contains("non-empty"), std::runtime_error);
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"dim": 2, "points": [[0.1, 0.2], [0.3]]})")),
                       doctest::Contains("points[1]"), std::runtime_error);
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"dim": 2, "points": [[0.1, "x"]]})")),
                       doctest::Contains("not a number"), std::runtime_error);
  // Geometry violations surface through the same channel.
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"dim": 2, "points": [[0, 0], [0, 0]]})")),
                  std::runtime_error);
  // Unknown keys are ignored.
  CHECK_NOTHROW(config_from_json(json::parse(R"({"dim": 1, "points": [[0.5]], "note": "extra"})")));
}

TEST_CASE("section check report serializes its verdict and witnesses") {
  SectionCheckOptions opts;
  opts.samples = 100;
  opts.seed = 2;
  opts.equivariance = SectionCheckOptions::Equivariance::On;
  const auto rep = verify_section(SectionDescriptor::biased(0.25), 2, 2, opts);
  const json j = report_to_json(rep);
  CHECK(j["section"] == "biased:0.25");
  CHECK(j["pass"] == false);
  CHECK(j["equivariance_violations"].get<std::size_t>() > 0);
  CHECK(j["witnesses"]["equivariance"].is_array());
  CHECK(j["witnesses"]["equivariance"].size() > 0);
}

TEST_CASE("obstruction report serializes coefficients with 1-based labels") {
  const auto rep = measure_coefficients(SectionDescriptor::registered("centroid"),
                                        default_obstruction_base(3, 0), 0.1, 128);
  const json j = report_to_json(rep);
  CHECK(j["lambda"].contains("2"));
  CHECK(j["lambda"].contains("3"));
  CHECK(j["delta"].contains("2,3"));
  CHECK(j["identity_holds"] == false);
  CHECK(j["collision"].is_null());
}

TEST_CASE("homotopy trace serializes grid, frames and phase labels") {
  Rng rng(8);
  const Configuration c = sample_configuration(rng, 2, 2);
  const auto trace = uniqueness_homotopy(SectionDescriptor::midpoint(), c, 8);
  const json j = trace_to_json(trace);
  REQUIRE(j["grid"].size() == 15);
  REQUIRE(j["frames"].size() == 15);
  REQUIRE(j["phase"].size() == 15);
  CHECK(j["phase"][0] == "scaling");
  CHECK(j["phase"][14] == "line");
  CHECK(config_from_json(j["frames"][0]).size() == 3);
}

TEST_CASE("fixed search result serializes the best configuration") {
  FixedSearchOptions opts;
  opts.seed = 1;
  opts.restarts = 2;
  opts.budget = 2000;
  const auto result = find_fixed_configuration(PointMapDescriptor::centroid(), 1, 2, opts);
  const json j = result_to_json(result);
  CHECK(j["converged"] == true);
  CHECK(config_from_json(j["best"]).size() == 1);
}
