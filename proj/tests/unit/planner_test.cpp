#include <doctest.h>

#include "planner/rampup.hpp"
#include "model/types.hpp"

using namespace hrc;

TEST_CASE("ramp-up sizing") {
  const auto p = plan(5'000, 15, 85);
  CHECK(p.daily_demand_units == 334);
  CHECK(p.stations_needed == 4);
  CHECK(p.planned_daily_output == 340);
  CHECK(p.planned_total_output == 5'100);
  CHECK(p.surplus_units == 100);
}

TEST_CASE("ceilings are exact") {
  CHECK(required_daily_rate(300, 15) == 20);
  CHECK(required_daily_rate(301, 15) == 21);
  CHECK(required_daily_rate(0, 15) == 0);
  CHECK(stations_needed(340, 85) == 4);
  CHECK(stations_needed(341, 85) == 5);
  CHECK(stations_needed(0, 85) == 0);
}

TEST_CASE("brute force agreement") {
  for (std::int64_t demand = 0; demand <= 400; demand += 7) {
    for (std::int64_t days = 1; days <= 20; ++days) {
      for (std::int64_t tp = 1; tp <= 40; tp += 3) {
        const auto p = plan(demand, days, tp);
        std::int64_t rate = 0;
        while (rate * days < demand) ++rate;
        std::int64_t stations = 0;
        while (stations * tp < rate) ++stations;
        REQUIRE(p.daily_demand_units == rate);
        REQUIRE(p.stations_needed == stations);
        REQUIRE(p.planned_total_output >= demand);
      }
    }
  }
}

TEST_CASE("invalid plans") {
  CHECK_THROWS_AS(plan(100, 0, 10), Error);
  CHECK_THROWS_AS(plan(100, 10, 0), Error);
  CHECK(plannable_throughput(85.9) == 85);
}
