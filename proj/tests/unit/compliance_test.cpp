#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "compliance/compliance.hpp"
#include "compliance/geometry.hpp"
#include "model/scenario_io.hpp"

using namespace hrc;

namespace {

Actor human(std::string id, double x, double y) {
  return {std::move(id), ResourceKind::kHuman, {x, y}, 0.0, kDefaultArmReachM};
}

Actor robot(std::string id, double x, double y, double reach) {
  return {std::move(id), ResourceKind::kRobot, {x, y}, reach, kDefaultArmReachM};
}

const GuidelineEntry& entry(const ComplianceReport& r, int id) { return r.entries.at(static_cast<std::size_t>(id - 1)); }

}  // namespace

TEST_CASE("lens area special cases") {
  constexpr double pi = std::numbers::pi;
  CHECK(overlap_area({0, 0}, 1, {3, 0}, 1) == 0.0);
  CHECK(overlap_area({0, 0}, 1, {2, 0}, 1) == doctest::Approx(0.0));
  CHECK(overlap_area({0, 0}, 2, {0.5, 0}, 1) == doctest::Approx(pi));
  CHECK(overlap_area({0, 0}, 1, {0, 0}, 1) == doctest::Approx(pi));
  // Two unit discs one radius apart: 2*pi/3 - sqrt(3)/2.
  CHECK(overlap_area({0, 0}, 1, {1, 0}, 1) == doctest::Approx(2 * pi / 3 - std::sqrt(3.0) / 2));
  CHECK(overlap_area({0, 0}, 1, {1, 0}, 2) == doctest::Approx(overlap_area({1, 0}, 2, {0, 0}, 1)));
  CHECK_THROWS_AS(overlap_area({0, 0}, 0, {1, 0}, 1), Error);
}

TEST_CASE("distance threshold is strict") {
  Layout layout;
  layout.actors = {human("a", 0, 0), human("b", 2.0, 0)};
  CHECK(check_distance(layout).empty());
  layout.actors[1].position.x = 1.999;
  const auto f = check_distance(layout);
  REQUIRE(f.size() == 1);
  CHECK(f[0].subjects == std::vector<std::string>{"a", "b"});
  CHECK(*f[0].value == doctest::Approx(1.999));
}

TEST_CASE("emergency stop inside arm reach, inclusive") {
  Layout layout;
  layout.actors = {human("a", 0, 0)};
  layout.estops = {{0.8, 0}};
  CHECK(check_estop(layout).empty());
  layout.estops = {{0.81, 0}};
  CHECK(check_estop(layout).size() == 1);
  layout.estops.clear();
  CHECK(check_estop(layout).size() == 1);
}

TEST_CASE("handoffs between humans") {
  Layout layout;
  layout.actors = {human("a", 0, 0), human("b", 3, 0), robot("r", 1.5, 1, 1.0)};
  layout.buffers = {{"buf", {1.5, 0}}};
  SUBCASE("direct") {
    layout.handoffs = {{"a", "b"}};
    const auto f = check_interaction(layout);
    REQUIRE(f.size() == 1);
    CHECK(f[0].severity == Severity::kError);
  }
  SUBCASE("through a buffer and a robot") {
    layout.handoffs = {{"a", "buf"}, {"buf", "r"}, {"r", "b"}};
    const auto f = check_interaction(layout);
    REQUIRE(f.size() == 1);
    CHECK(f[0].rule == "gloves");
    CHECK(f[0].severity == Severity::kAdvisory);
  }
  SUBCASE("back to the same operator only") {
    layout.handoffs = {{"a", "buf"}, {"buf", "a"}};
    CHECK(check_interaction(layout).empty());
  }
}

TEST_CASE("reference layout") {
  const auto scenario = bundled_scenario();
  const auto report = lint(scenario);
  REQUIRE(report.entries.size() == 11);
  CHECK(report.fail_count() == 0);
  CHECK(entry(report, 6).status == GuidelineStatus::kPass);
  CHECK(entry(report, 8).status == GuidelineStatus::kPass);
  CHECK(entry(report, 8).findings.size() == 4);
  CHECK(entry(report, 9).status == GuidelineStatus::kPass);
  for (int id : {1, 2, 3, 4, 5, 7, 10, 11}) CHECK(entry(report, id).status == GuidelineStatus::kManualReview);

  SUBCASE("closer operators fail social distancing") {
    auto layout = *scenario.layout;
    for (auto& a : layout.actors) {
      if (a.id == "human-b") a.position = {1.5, 0};
    }
    const auto moved = lint(layout);
    CHECK(entry(moved, 9).status == GuidelineStatus::kFail);
    CHECK(moved.fail_count() == 1);
  }
  SUBCASE("custom minimum distance") {
    ComplianceOptions o;
    o.min_distance_m = 2.5;
    CHECK(entry(lint(scenario, o), 9).status == GuidelineStatus::kFail);
  }
}

TEST_CASE("scenario without layout") {
  Scenario s;
  CHECK_THROWS_AS(lint(s), Error);
}
