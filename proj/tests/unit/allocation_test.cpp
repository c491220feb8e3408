#include <doctest.h>

#include "allocation/allocation.hpp"
#include "model/scenario_io.hpp"

using namespace hrc;

TEST_CASE("robot only when every attribute holds") {
  for (unsigned bits = 0; bits < 32; ++bits) {
    const auto attrs = AttributeRating::from_bits(bits);
    const bool all = (bits & 1u) && (bits & 2u) && (bits & 4u) && (bits & 8u) && (bits & 16u);
    CHECK((rate_task(attrs) == ResourceClass::kRobotEligible) == all);
    CHECK(failed_attributes(attrs).empty() == all);
  }
}

TEST_CASE("failed attributes are listed in symbol order") {
  CHECK(failed_attributes(AttributeRating::from_ints(0, 1, 0, 1, 0)) ==
        std::vector<std::string>{"S", "M", "Sf"});
}

TEST_CASE("partition of the bundled scenario") {
  const auto s = bundled_scenario();
  const auto a = allocate_tasks(s.tasks);
  CHECK(a.robot_tasks == std::vector<std::string>{"t01", "t02", "t03", "t04", "t05", "t06", "t14"});
  CHECK(a.human_tasks.size() == 8);
  CHECK(a.rationale.size() == s.tasks.size());
  CHECK(a.class_of("t15") == ResourceClass::kHumanRequired);
  CHECK_THROWS_AS(a.class_of("nope"), Error);
}

TEST_CASE("empty task list") {
  const auto a = allocate_tasks({});
  CHECK(a.robot_tasks.empty());
  CHECK(a.human_tasks.empty());
}
