#include <doctest.h>

#include <map>
#include <random>

#include "model/precedence.hpp"
#include "model/scenario_io.hpp"
#include "support/random_scenario.hpp"

using namespace hrc;

namespace {

PrecedenceGraph graph(std::vector<std::string> ids, std::vector<Edge> edges) {
  return {std::move(ids), std::move(edges)};
}

ErrorCode load_error(std::string_view doc, std::string* path = nullptr) {
  try {
    load_scenario(doc);
  } catch (const Error& e) {
    if (path != nullptr) *path = e.path();
    return e.code();
  }
  FAIL("document was accepted");
  return ErrorCode::kIo;
}

constexpr std::string_view kMinimal = R"({
  "schema_version": 1,
  "name": "mini",
  "shift_s": 3600,
  "demand": 10,
  "horizon_days": 2,
  "tasks": [
    {"id": "a", "name": "pick", "duration_s": 5, "kind": "pick_place",
     "attributes": {"S": 1, "F": 1, "M": 1, "J": 1, "Sf": 1}},
    {"id": "b", "name": "test", "duration_s": 7.5, "kind": "test",
     "attributes": {"S": 1, "F": 0, "M": 1, "J": 1, "Sf": 1}}
  ],
  "precedence": [["a", "b"]],
  "resources": [
    {"id": "r", "kind": "robot", "reach_mm": 850, "payload_kg": 5,
     "timing": {"ct_s": 10, "pt_s": 12, "setup_s": 60, "availability": 0.9}},
    {"id": "h", "kind": "human",
     "timing": {"ct_s": 20, "pt_s": 25, "setup_s": 60, "availability": 1}}
  ]
})";

}  // namespace

TEST_CASE("attribute bits round trip") {
  for (unsigned bits = 0; bits < 32; ++bits) CHECK(AttributeRating::from_bits(bits).bits() == bits);
  CHECK_THROWS_AS(AttributeRating::from_bits(32), Error);
  CHECK_THROWS_AS(AttributeRating::from_ints(1, 1, 2, 1, 1), Error);
}

TEST_CASE("precedence validation") {
  SUBCASE("valid chain") {
    CHECK(validate_precedence(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})).ok());
  }
  SUBCASE("cycle witness is closed") {
    const auto v = validate_precedence(graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}));
    REQUIRE(v.status == PrecedenceVerdict::Status::kCycle);
    REQUIRE(v.cycle.size() >= 2);
    CHECK(v.cycle.front() == v.cycle.back());
  }
  SUBCASE("self loop") {
    const auto v = validate_precedence(graph({"a"}, {{"a", "a"}}));
    CHECK(v.status == PrecedenceVerdict::Status::kCycle);
  }
  SUBCASE("dangling endpoint") {
    const auto v = validate_precedence(graph({"a", "b"}, {{"a", "b"}, {"b", "zz"}}));
    REQUIRE(v.status == PrecedenceVerdict::Status::kDanglingEndpoint);
    CHECK(v.unknown_id == "zz");
    CHECK(v.edge_index == 1);
  }
}

TEST_CASE("topological order breaks ties by id") {
  const auto order = topological_order(graph({"d", "c", "b", "a"}, {{"c", "a"}, {"d", "b"}}));
  CHECK(order == std::vector<std::string>{"c", "a", "d", "b"});
  CHECK_THROWS_AS(topological_order(graph({"a", "b"}, {{"a", "b"}, {"b", "a"}})), Error);
}

TEST_CASE("topological order respects every edge of random DAGs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    PrecedenceGraph g;
    for (int i = 0; i < n; ++i) g.task_ids.push_back("n" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 4 == 0) g.edges.push_back({g.task_ids[i], g.task_ids[j]});
      }
    }
    const auto order = topological_order(g);
    REQUIRE(order.size() == static_cast<std::size_t>(n));
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (const auto& e : g.edges) CHECK(pos[e.from] < pos[e.to]);
  }
}

TEST_CASE("minimal scenario loads") {
  const auto s = load_scenario(kMinimal);
  CHECK(s.name == "mini");
  CHECK(s.shift_ms == 3'600'000);
  REQUIRE(s.tasks.size() == 2);
  CHECK(s.tasks[1].duration_ms == 7'500);
  CHECK(s.tasks[1].attributes.bits() == AttributeRating::from_ints(1, 0, 1, 1, 1).bits());
  CHECK(s.precedence.task_ids == std::vector<std::string>{"a", "b"});
  REQUIRE(s.resources.size() == 2);
  CHECK(s.resources[0].kind == ResourceKind::kRobot);
  CHECK(s.resources[0].timing.availability == doctest::Approx(0.9));
}

TEST_CASE("load errors carry a category and a path") {
  std::string path;
  CHECK(load_error("{ \"tasks\": [ }") == ErrorCode::kParse);

  std::string doc(kMinimal);
  doc.replace(doc.find("\"duration_s\": 5"), 15, "\"duration_s\": \"x\"");
  CHECK(load_error(doc, &path) == ErrorCode::kValidation);
  CHECK(path == "tasks[0].duration_s");

  doc = kMinimal;
  doc.replace(doc.find("[\"a\", \"b\"]"), 10, "[\"a\", \"q\"]");
  CHECK(load_error(doc, &path) == ErrorCode::kValidation);
  CHECK(path == "precedence[0]");

  doc = kMinimal;
  doc.replace(doc.find("[[\"a\", \"b\"]]"), 12, "[[\"a\", \"b\"], [\"b\", \"a\"]]");
  CHECK(load_error(doc, &path) == ErrorCode::kValidation);
  CHECK(path == "precedence");

  doc = kMinimal;
  doc.replace(doc.find("\"ct_s\": 10, \"pt_s\": 12"), 22, "\"ct_s\": 14, \"pt_s\": 12");
  CHECK(load_error(doc, &path) == ErrorCode::kValidation);
  CHECK(path == "resources[0].timing.pt_s");

  doc = kMinimal;
  doc.replace(doc.find("\"reach_mm\": 850, "), 17, "");
  CHECK(load_error(doc, &path) == ErrorCode::kValidation);
  CHECK(path == "resources[0].reach_mm");
}

TEST_CASE("missing scenario file is an io error") {
  try {
    load_scenario_file("/nonexistent/scenario.json");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("serialize and load round trip") {
  const auto bundled = bundled_scenario();
  CHECK(load_scenario(serialize_scenario(bundled)) == bundled);
  CHECK(serialize_scenario(load_scenario(serialize_scenario(bundled))) == serialize_scenario(bundled));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = testing::random_scenario(rng);
    validate_scenario(s);
    CHECK(load_scenario(serialize_scenario(s)) == s);
  }
}

TEST_CASE("bundled scenario shape") {
  const auto s = bundled_scenario();
  CHECK(s.tasks.size() == 15);
  CHECK(s.resources.size() == 4);
  CHECK(s.shift_ms == 27'000'000);
  CHECK(s.demand_units == 5'000);
  CHECK(s.horizon_days == 15);
  REQUIRE(s.layout.has_value());
}
