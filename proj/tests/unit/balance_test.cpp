#include <doctest.h>

#include "balance/line_balance.hpp"
#include "model/scenario_io.hpp"

using namespace hrc;

namespace {

constexpr Millis s(std::int64_t seconds) { return seconds * kMillisPerSecond; }

// Closed forms for a station whose resources share one setup and full
// availability, checked against the reference station below.
std::int64_t serial_per_day(Millis window, Millis table_cycle, Millis offline) {
  // Unit k leaves the table at k * cycle and is finished offline at
  // k * cycle + offline, as the offline stage is faster than the table.
  std::int64_t n = 0;
  while ((n + 1) * table_cycle + offline <= window) ++n;
  return n;
}

std::int64_t pipelined_per_day(Millis window, Millis interval, int positions, Millis offline) {
  // Offline is slower than the table interval, so completions are spaced by it.
  const Millis first_exit = interval * positions;
  std::int64_t n = 0;
  while (first_exit + (n + 1) * offline <= window) ++n;
  return n;
}

Resource robot(std::string id, Millis ct, Millis pt) {
  Resource r{std::move(id), ResourceKind::kRobot, "", 850, 5, "", {ct, pt, 0, 1.0}};
  return r;
}

Resource human(std::string id, Millis ct, Millis pt) {
  return {std::move(id), ResourceKind::kHuman, "", 0, 0, "", {ct, pt, 0, 1.0}};
}

}  // namespace

TEST_CASE("takt is whole seconds per demanded unit") {
  CHECK(takt_seconds(s(27'000), 334) == 80);
  CHECK(takt_seconds(s(27'000), 1) == 27'000);
  CHECK(takt_seconds(s(100), 3) == 33);
  CHECK_THROWS_AS(takt_seconds(s(27'000), 0), Error);
}

TEST_CASE("reference station timings") {
  const auto scenario = bundled_scenario();
  const auto config = station_config_for(scenario);
  REQUIRE(config.on_table.size() == 3);
  REQUIRE(config.offline.size() == 1);
  CHECK(config.rotary_positions == 3);
  CHECK(unit_cycle_time(config) == s(106 + 140 + 80 + 80));
  CHECK(unit_process_time(config) == s(114 + 152 + 92 + 160));
  CHECK(table_interval_ms(config) == s(152));
  CHECK(timing_warnings(config, scenario.resources).empty());

  const auto b = bottleneck_stage(config);
  REQUIRE(b.has_value());
  CHECK(b->resource == "human-b");
  CHECK(b->pt_ms == s(160));
}

TEST_CASE("idle report") {
  const auto config = station_config_for(bundled_scenario());
  const auto pipelined = idle_report(config, FlowMode::kPipelined);
  REQUIRE(pipelined.size() == 3);
  CHECK(pipelined[0].idle_ms == s(152 - 114));
  CHECK(pipelined[1].idle_ms == 0);
  CHECK(pipelined[2].idle_ms == s(152 - 92));
  const auto serial = idle_report(config, FlowMode::kSerial);
  CHECK(serial[0].idle_ms == s(152 + 92));
}

TEST_CASE("analytic throughput of the reference station") {
  const auto scenario = bundled_scenario();
  const auto config = station_config_for(scenario);
  const Millis window = s(27'000 - 1'800);

  const auto serial = analytic_throughput(config, scenario.resources, scenario.shift_ms, FlowMode::kSerial);
  CHECK(serial.units_per_day == serial_per_day(window, s(114 + 152 + 92), s(160)));
  CHECK(serial.units_per_day == 69);
  CHECK(serial.first_completion_ms == s(1'800 + 358 + 160));

  const auto pipelined =
      analytic_throughput(config, scenario.resources, scenario.shift_ms, FlowMode::kPipelined);
  CHECK(pipelined.units_per_day == pipelined_per_day(window, s(152), 3, s(160)));
  CHECK(pipelined.units_per_day == 154);
  CHECK(pipelined.first_table_exit_ms == s(1'800 + 3 * 152));
}

TEST_CASE("availability shortens the working window") {
  auto scenario = bundled_scenario();
  const auto config = station_config_for(scenario);
  const auto full = analytic_throughput(config, scenario.resources, scenario.shift_ms, FlowMode::kSerial);
  for (auto& r : scenario.resources) r.timing.availability = 0.5;
  const auto half = analytic_throughput(config, scenario.resources, scenario.shift_ms, FlowMode::kSerial);
  CHECK(half.units_per_day < full.units_per_day);
  CHECK(half.units_per_day == serial_per_day(s(13'500 - 1'800), s(358), s(160)));
}

TEST_CASE("build_stages groups same-class runs") {
  std::vector<Task> tasks;
  PrecedenceGraph g;
  const std::vector<unsigned> bits{31, 31, 0, 0, 31, 3};
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto id = "t" + std::to_string(i);
    tasks.push_back({id, id, s(10), AttributeRating::from_bits(bits[i]), TaskKind::kOther});
    g.task_ids.push_back(id);
    if (i > 0) g.edges.push_back({"t" + std::to_string(i - 1), id});
  }
  const auto allocation = allocate_tasks(tasks);
  const std::vector<Resource> resources{robot("r1", s(10), s(20)), human("h1", s(10), s(20)),
                                        robot("r2", s(10), s(20)), human("h2", s(10), s(20))};

  const auto config = build_stages(allocation, g, resources, {"h2"});
  REQUIRE(config.on_table.size() == 3);
  CHECK(config.on_table[0].resource == "r1");
  CHECK(config.on_table[0].tasks == std::vector<std::string>{"t0", "t1"});
  CHECK(config.on_table[1].resource == "h1");
  CHECK(config.on_table[2].resource == "r2");
  REQUIRE(config.offline.size() == 1);
  CHECK(config.offline[0].resource == "h2");
  CHECK(config.offline[0].tasks == std::vector<std::string>{"t5"});
  CHECK(config.rotary_positions == 3);

  SUBCASE("missing class is infeasible") {
    const std::vector<Resource> robots_only{robot("r1", s(10), s(20))};
    try {
      build_stages(allocation, g, robots_only);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInfeasible);
    }
  }
  SUBCASE("on-table work after offline work is infeasible") {
    try {
      build_stages(allocation, g, resources, {"h1"});
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInfeasible);
    }
  }
}

TEST_CASE("a resource with several stages splits its timing by work") {
  std::vector<Task> tasks{{"a", "a", s(30), AttributeRating::from_bits(31), TaskKind::kOther},
                          {"b", "b", s(10), AttributeRating::from_bits(0), TaskKind::kOther},
                          {"c", "c", s(10), AttributeRating::from_bits(31), TaskKind::kOther}};
  PrecedenceGraph g{{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}};
  const std::vector<Resource> resources{robot("r", s(40), s(80)), human("h", s(10), s(12))};
  auto config = build_stages(allocate_tasks(tasks), g, resources);
  assign_stage_timings(config, tasks, resources);
  REQUIRE(config.on_table.size() == 3);
  CHECK(config.on_table[0].pt_ms == s(60));
  CHECK(config.on_table[2].pt_ms == s(20));
  CHECK(config.on_table[0].ct_ms + config.on_table[2].ct_ms == s(40));
  CHECK(table_interval_ms(config) == s(80));
  CHECK(unit_process_time(config) == s(92));
}

TEST_CASE("explicit stages are validated") {
  auto scenario = bundled_scenario();
  SUBCASE("human task on a robot") {
    std::swap(scenario.stages[0].tasks.back(), scenario.stages[1].tasks.front());
    CHECK_THROWS_AS(station_config_for(scenario), Error);
  }
  SUBCASE("stage order against precedence") {
    std::swap(scenario.stages[0], scenario.stages[1]);
    CHECK_THROWS_AS(station_config_for(scenario), Error);
  }
  SUBCASE("too few positions") {
    scenario.rotary_positions = 2;
    CHECK_THROWS_AS(station_config_for(scenario), Error);
  }
}
