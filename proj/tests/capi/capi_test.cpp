#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "hrcline/hrcline.h"

namespace {

struct Text {
  char* p = nullptr;
  ~Text() { hrc_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct Handle {
  hrc_scenario* p = nullptr;
  ~Handle() { hrc_scenario_free(p); }
};

}  // namespace

TEST_CASE("bundled scenario through the C API") {
  Handle s;
  REQUIRE(hrc_scenario_load_bundled(&s.p) == HRC_OK);
  hrc_options o{};
  o.format = HRC_FORMAT_JSON;
  o.replications = 2;
  Text out;
  REQUIRE(hrc_report_balance(s.p, &o, &out.p) == HRC_OK);
  CHECK(out.str().find("\"unit_cycle_time_s\": 406") != std::string::npos);

  double mean = 0;
  double hw = -1;
  o.replications = 3;
  REQUIRE(hrc_simulate_throughput(s.p, &o, &mean, &hw) == HRC_OK);
  CHECK(mean > 60);
  CHECK(hw >= 0);
}

TEST_CASE("numeric helpers") {
  int64_t takt = 0;
  REQUIRE(hrc_takt_seconds(27000, 334, &takt) == HRC_OK);
  CHECK(takt == 80);
  hrc_plan p{};
  REQUIRE(hrc_plan_compute(5000, 15, 85, &p) == HRC_OK);
  CHECK(p.daily_demand == 334);
  CHECK(p.stations == 4);
  CHECK(p.planned_daily_output == 340);
  CHECK(p.planned_total == 5100);
  CHECK(hrc_plan_compute(5000, 0, 85, &p) == HRC_ERR_VALIDATION);
  CHECK(std::string(hrc_last_error()).rfind("validation: ", 0) == 0);
}

TEST_CASE("error codes") {
  Handle s;
  CHECK(hrc_scenario_load_file("/nonexistent.json", &s.p) == HRC_ERR_IO);
  CHECK(s.p == nullptr);
  const char* bad = "{ nope";
  CHECK(hrc_scenario_load_string(bad, std::strlen(bad), &s.p) == HRC_ERR_PARSE);
  CHECK(std::string(hrc_last_error()).find("line 1") != std::string::npos);
  const char* cyclic = R"({"shift_s": 100, "tasks": [
      {"id": "a", "duration_s": 1, "attributes": {"S":1,"F":1,"M":1,"J":1,"Sf":1}},
      {"id": "b", "duration_s": 1, "attributes": {"S":1,"F":1,"M":1,"J":1,"Sf":1}}],
      "precedence": [["a","b"],["b","a"]]})";
  CHECK(hrc_scenario_load_string(cyclic, std::strlen(cyclic), &s.p) == HRC_ERR_VALIDATION);
  Text out;
  CHECK(hrc_report_balance(nullptr, nullptr, &out.p) == HRC_ERR_USAGE);
}

TEST_CASE("infeasible station") {
  const char* doc = R"({"shift_s": 100, "tasks": [
      {"id": "a", "duration_s": 1, "attributes": {"S":0,"F":1,"M":1,"J":1,"Sf":1}}],
      "resources": [{"id": "r", "kind": "robot", "reach_mm": 500, "payload_kg": 1,
                     "timing": {"ct_s": 1, "pt_s": 2, "setup_s": 0, "availability": 1}}]})";
  Handle s;
  REQUIRE(hrc_scenario_load_string(doc, std::strlen(doc), &s.p) == HRC_OK);
  Text out;
  CHECK(hrc_report_balance(s.p, nullptr, &out.p) == HRC_ERR_INFEASIBLE);
  CHECK(out.p == nullptr);
}

TEST_CASE("serialize round trip") {
  Handle a;
  REQUIRE(hrc_scenario_load_bundled(&a.p) == HRC_OK);
  Text first;
  REQUIRE(hrc_scenario_serialize(a.p, &first.p) == HRC_OK);
  Handle b;
  REQUIRE(hrc_scenario_load_string(first.p, std::strlen(first.p), &b.p) == HRC_OK);
  Text second;
  REQUIRE(hrc_scenario_serialize(b.p, &second.p) == HRC_OK);
  CHECK(first.str() == second.str());
  CHECK(std::string(hrc_version()).size() > 0);
}
