#include "model/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "model/precedence.hpp"

namespace hrc {

namespace {

using nlohmann::json;

// Cursor over a JSON value that remembers how it was reached, so every
// schema error names the offending field.
class Field {
 public:
  Field(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::kValidation, message, path_);
  }

  bool has(std::string_view key) const {
    return value_.is_object() && value_.contains(std::string(key));
  }

  Field at(std::string_view key) const {
    if (!value_.is_object()) fail("expected an object");
    const auto it = value_.find(std::string(key));
    if (it == value_.end()) fail("missing required field '" + std::string(key) + "'");
    return Field(*it, join(key));
  }

  std::optional<Field> maybe(std::string_view key) const {
    if (!value_.is_object()) fail("expected an object");
    const auto it = value_.find(std::string(key));
    if (it == value_.end() || it->is_null()) return std::nullopt;
    return Field(*it, join(key));
  }

  std::vector<Field> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Field> out;
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::int64_t integer() const {
    if (value_.is_number_integer()) return value_.get<std::int64_t>();
    if (value_.is_number_float()) {
      const double v = value_.get<double>();
      if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
        return static_cast<std::int64_t>(v);
      }
    }
    fail("expected an integer");
  }

  std::uint64_t unsigned_integer() const {
    if (value_.is_number_unsigned()) return value_.get<std::uint64_t>();
    const auto v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

  Millis seconds() const {
    const double s = number();
    if (s < 0) fail("seconds must be non-negative");
    if (s > 1.0e12) fail("seconds out of range");
    return seconds_to_ms(s);
  }

 private:
  std::string join(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const json& value_;
  std::string path_;
};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Point parse_point(const Field& f) {
  if (f.raw().is_array()) {
    const auto items = f.items();
    if (items.size() != 2) f.fail("expected [x, y]");
    return {items[0].number(), items[1].number()};
  }
  return {f.at("x").number(), f.at("y").number()};
}

Edge parse_edge(const Field& f) {
  if (f.raw().is_array()) {
    const auto items = f.items();
    if (items.size() != 2) f.fail("expected a [from, to] pair");
    return {items[0].string(), items[1].string()};
  }
  return {f.at("from").string(), f.at("to").string()};
}

Task parse_task(const Field& f) {
  Task t;
  t.id = f.at("id").string();
  t.name = f.maybe("name") ? f.at("name").string() : t.id;
  t.duration_ms = f.at("duration_s").seconds();
  const auto attrs = f.at("attributes");
  auto flag = [&](std::string_view key) {
    const auto v = attrs.at(key);
    const auto i = v.integer();
    if (i != 0 && i != 1) v.fail("attribute must be 0 or 1");
    return static_cast<int>(i);
  };
  t.attributes = AttributeRating::from_ints(flag("S"), flag("F"), flag("M"), flag("J"), flag("Sf"));
  if (const auto k = f.maybe("kind")) {
    const auto kind = parse_task_kind(k->string());
    if (!kind) k->fail("unknown task kind '" + k->string() + "'");
    t.kind = *kind;
  }
  return t;
}

Resource parse_resource(const Field& f) {
  Resource r;
  r.id = f.at("id").string();
  r.name = f.maybe("name") ? f.at("name").string() : r.id;
  const auto kind_field = f.at("kind");
  const auto kind = parse_resource_kind(kind_field.string());
  if (!kind) kind_field.fail("resource kind must be 'human' or 'robot'");
  r.kind = *kind;
  if (const auto v = f.maybe("reach_mm")) r.reach_mm = v->number();
  if (const auto v = f.maybe("payload_kg")) r.payload_kg = v->number();
  if (const auto v = f.maybe("tool")) r.tool = v->string();

  const auto timing = f.at("timing");
  r.timing.ct_ms = timing.at("ct_s").seconds();
  r.timing.pt_ms = timing.at("pt_s").seconds();
  r.timing.setup_ms = timing.maybe("setup_s") ? timing.at("setup_s").seconds() : 0;
  r.timing.availability = timing.maybe("availability") ? timing.at("availability").number() : 1.0;
  return r;
}

StageSpec parse_stage(const Field& f) {
  StageSpec s;
  s.resource = f.at("resource").string();
  for (const auto& t : f.at("tasks").items()) s.tasks.push_back(t.string());
  if (const auto p = f.maybe("placement")) {
    const auto text = p->string();
    if (text == "on_table") {
      s.placement = Placement::kOnTable;
    } else if (text == "offline") {
      s.placement = Placement::kOffline;
    } else {
      p->fail("placement must be 'on_table' or 'offline'");
    }
  }
  return s;
}

Layout parse_layout(const Field& f, const std::vector<Resource>& resources) {
  Layout layout;
  if (const auto actors = f.maybe("actors")) {
    for (const auto& a : actors->items()) {
      Actor actor;
      actor.id = a.at("id").string();
      const auto kind_field = a.at("kind");
      const auto kind = parse_resource_kind(kind_field.string());
      if (!kind) kind_field.fail("actor kind must be 'human' or 'robot'");
      actor.kind = *kind;
      actor.position = a.maybe("position") ? parse_point(a.at("position"))
                                           : Point{a.at("x").number(), a.at("y").number()};
      if (actor.kind == ResourceKind::kRobot) {
        if (const auto v = a.maybe("reach_m")) {
          actor.reach_m = v->number();
        } else if (const auto mm = a.maybe("reach_mm")) {
          actor.reach_m = mm->number() / 1000.0;
        } else {
          for (const auto& r : resources) {
            if (r.id == actor.id) actor.reach_m = r.reach_mm / 1000.0;
          }
        }
        if (!(actor.reach_m > 0)) a.fail("robot actor needs a positive reach");
      } else if (const auto v = a.maybe("arm_reach_m")) {
        actor.arm_reach_m = v->number();
        if (!(actor.arm_reach_m > 0)) v->fail("arm reach must be positive");
      }
      layout.actors.push_back(std::move(actor));
    }
  }
  if (const auto estops = f.maybe("estops")) {
    for (const auto& e : estops->items()) layout.estops.push_back(parse_point(e));
  }
  if (const auto buffers = f.maybe("buffers")) {
    for (const auto& b : buffers->items()) {
      BufferNode node;
      node.id = b.at("id").string();
      node.position = b.maybe("position") ? parse_point(b.at("position"))
                                          : Point{b.at("x").number(), b.at("y").number()};
      layout.buffers.push_back(std::move(node));
    }
  }
  if (const auto handoffs = f.maybe("handoffs")) {
    for (const auto& h : handoffs->items()) layout.handoffs.push_back(parse_edge(h));
  }
  return layout;
}

Scenario parse_scenario(const json& doc) {
  const Field root(doc, "");
  if (!doc.is_object()) root.fail("scenario document must be a JSON object");
  if (const auto v = root.maybe("schema_version")) {
    if (v->integer() != kScenarioSchemaVersion) {
      v->fail("unsupported schema_version " + std::to_string(v->integer()));
    }
  }

  Scenario s;
  if (const auto v = root.maybe("name")) s.name = v->string();
  s.shift_ms = root.at("shift_s").seconds();
  if (const auto v = root.maybe("demand")) s.demand_units = v->integer();
  if (const auto v = root.maybe("horizon_days")) {
    const auto days = v->integer();
    if (days < 1 || days > 100'000) v->fail("horizon_days must be in [1, 100000]");
    s.horizon_days = static_cast<int>(days);
  }

  if (const auto tasks = root.maybe("tasks")) {
    for (const auto& t : tasks->items()) s.tasks.push_back(parse_task(t));
  }
  for (const auto& t : s.tasks) s.precedence.task_ids.push_back(t.id);
  if (const auto edges = root.maybe("precedence")) {
    for (const auto& e : edges->items()) s.precedence.edges.push_back(parse_edge(e));
  }
  if (const auto resources = root.maybe("resources")) {
    for (const auto& r : resources->items()) s.resources.push_back(parse_resource(r));
  }
  if (const auto stages = root.maybe("stages")) {
    for (const auto& st : stages->items()) s.stages.push_back(parse_stage(st));
  }
  if (const auto v = root.maybe("rotary_positions")) {
    const auto p = v->integer();
    if (p < 0 || p > 1000) v->fail("rotary_positions must be in [0, 1000]");
    s.rotary_positions = static_cast<int>(p);
  }

  if (const auto sim = root.maybe("simulation")) {
    if (const auto v = sim->maybe("mode")) {
      const auto mode = parse_flow_mode(v->string());
      if (!mode) v->fail("mode must be 'serial' or 'pipelined'");
      s.simulation.mode = *mode;
    }
    if (const auto v = sim->maybe("variability")) {
      const auto kind = parse_variability(v->string());
      if (!kind) v->fail("variability must be 'deterministic' or 'triangular'");
      s.simulation.variability = *kind;
    }
    if (const auto v = sim->maybe("replications")) {
      const auto n = v->integer();
      if (n < 1 || n > 1'000'000) v->fail("replications must be in [1, 1000000]");
      s.simulation.replications = static_cast<int>(n);
    }
    if (const auto v = sim->maybe("seed")) s.simulation.seed = v->unsigned_integer();
    if (const auto v = sim->maybe("stations")) {
      const auto n = v->integer();
      if (n < 1 || n > 10'000) v->fail("stations must be in [1, 10000]");
      s.simulation.stations = static_cast<int>(n);
    }
  }
  if (const auto planning = root.maybe("planning")) {
    if (const auto v = planning->maybe("per_station_throughput")) {
      s.per_station_throughput = v->number();
    }
  }
  if (const auto layout = root.maybe("layout")) s.layout = parse_layout(*layout, s.resources);
  return s;
}

json point_json(const Point& p) { return json{{"x", p.x}, {"y", p.y}}; }

}  // namespace

void validate_scenario(const Scenario& s) {
  auto fail = [](std::string path, std::string message) {
    throw Error(ErrorCode::kValidation, std::move(message), std::move(path));
  };

  if (s.shift_ms <= 0) fail("shift_s", "shift must be positive");
  if (s.demand_units < 0) fail("demand", "demand must be non-negative");
  if (s.horizon_days < 1) fail("horizon_days", "horizon must be at least one day");

  std::set<std::string, std::less<>> task_ids;
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto path = "tasks[" + std::to_string(i) + "]";
    if (s.tasks[i].id.empty()) fail(path + ".id", "task id must not be empty");
    if (!task_ids.insert(s.tasks[i].id).second) {
      fail(path + ".id", "duplicate task id '" + s.tasks[i].id + "'");
    }
    if (s.tasks[i].duration_ms < 0) fail(path + ".duration_s", "duration must be non-negative");
  }

  for (std::size_t i = 0; i < s.precedence.edges.size(); ++i) {
    const auto& e = s.precedence.edges[i];
    for (const auto* id : {&e.from, &e.to}) {
      if (!task_ids.contains(*id)) {
        fail("precedence[" + std::to_string(i) + "]", "unknown task reference '" + *id + "'");
      }
    }
  }
  if (const auto verdict = validate_precedence(s.precedence); !verdict.ok()) {
    fail("precedence", verdict.message());
  }

  std::set<std::string, std::less<>> resource_ids;
  for (std::size_t i = 0; i < s.resources.size(); ++i) {
    const auto& r = s.resources[i];
    const auto path = "resources[" + std::to_string(i) + "]";
    if (r.id.empty()) fail(path + ".id", "resource id must not be empty");
    if (!resource_ids.insert(r.id).second) fail(path + ".id", "duplicate resource id '" + r.id + "'");
    if (r.kind == ResourceKind::kRobot) {
      if (!(r.reach_mm > 0)) fail(path + ".reach_mm", "robot requires reach_mm > 0");
      if (!(r.payload_kg > 0)) fail(path + ".payload_kg", "robot requires payload_kg > 0");
    } else if (r.reach_mm != 0 || r.payload_kg != 0) {
      fail(path, "human resources carry no reach or payload");
    }
    const auto& t = r.timing;
    if (t.ct_ms < 0) fail(path + ".timing.ct_s", "cycle time must be non-negative");
    if (t.pt_ms < t.ct_ms) fail(path + ".timing.pt_s", "process time must be at least the cycle time");
    if (t.setup_ms < 0) fail(path + ".timing.setup_s", "setup must be non-negative");
    if (!(t.availability > 0.0 && t.availability <= 1.0)) {
      fail(path + ".timing.availability", "availability must be in (0, 1]");
    }
  }

  std::set<std::string, std::less<>> staged_tasks;
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const auto& st = s.stages[i];
    const auto path = "stages[" + std::to_string(i) + "]";
    if (!resource_ids.contains(st.resource)) {
      fail(path + ".resource", "unknown resource reference '" + st.resource + "'");
    }
    for (const auto& t : st.tasks) {
      if (!task_ids.contains(t)) fail(path + ".tasks", "unknown task reference '" + t + "'");
      if (!staged_tasks.insert(t).second) fail(path + ".tasks", "task '" + t + "' staged twice");
    }
  }
  if (!s.stages.empty() && staged_tasks.size() != task_ids.size()) {
    for (const auto& id : task_ids) {
      if (!staged_tasks.contains(id)) fail("stages", "task '" + id + "' is not assigned to a stage");
    }
  }

  if (s.simulation.replications < 1) fail("simulation.replications", "need at least one replication");
  if (s.simulation.stations < 1) fail("simulation.stations", "need at least one station");
  if (s.per_station_throughput && !(*s.per_station_throughput > 0)) {
    fail("planning.per_station_throughput", "throughput must be positive");
  }

  if (s.layout) {
    std::set<std::string, std::less<>> nodes;
    for (std::size_t i = 0; i < s.layout->actors.size(); ++i) {
      const auto& a = s.layout->actors[i];
      const auto path = "layout.actors[" + std::to_string(i) + "]";
      if (!nodes.insert(a.id).second) fail(path + ".id", "duplicate layout node '" + a.id + "'");
      if (!std::isfinite(a.position.x) || !std::isfinite(a.position.y)) {
        fail(path, "position must be finite");
      }
      if (a.kind == ResourceKind::kRobot && !(a.reach_m > 0)) fail(path, "robot reach must be positive");
      if (a.kind == ResourceKind::kHuman && !(a.arm_reach_m > 0)) fail(path, "arm reach must be positive");
    }
    for (std::size_t i = 0; i < s.layout->buffers.size(); ++i) {
      const auto& b = s.layout->buffers[i];
      if (!nodes.insert(b.id).second) {
        fail("layout.buffers[" + std::to_string(i) + "].id", "duplicate layout node '" + b.id + "'");
      }
    }
    for (std::size_t i = 0; i < s.layout->handoffs.size(); ++i) {
      const auto& h = s.layout->handoffs[i];
      for (const auto* id : {&h.from, &h.to}) {
        if (!nodes.contains(*id)) {
          fail("layout.handoffs[" + std::to_string(i) + "]", "unknown layout node '" + *id + "'");
        }
      }
    }
  }
}

Scenario load_scenario(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(document, e.byte);
    throw Error(ErrorCode::kParse,
                "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
  }
  Scenario s = parse_scenario(doc);
  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read scenario file '" + path.string() + "'");
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["name"] = s.name;
  doc["shift_s"] = ms_to_seconds(s.shift_ms);
  doc["demand"] = s.demand_units;
  doc["horizon_days"] = s.horizon_days;

  doc["tasks"] = json::array();
  for (const auto& t : s.tasks) {
    const auto& a = t.attributes;
    doc["tasks"].push_back({
        {"id", t.id},
        {"name", t.name},
        {"duration_s", ms_to_seconds(t.duration_ms)},
        {"kind", to_string(t.kind)},
        {"attributes",
         {{"S", int{a.shape}}, {"F", int{a.feeding}}, {"M", int{a.mounting}}, {"J", int{a.joining}},
          {"Sf", int{a.safety}}}},
    });
  }
  doc["precedence"] = json::array();
  for (const auto& e : s.precedence.edges) doc["precedence"].push_back({e.from, e.to});

  doc["resources"] = json::array();
  for (const auto& r : s.resources) {
    json item{
        {"id", r.id},
        {"kind", to_string(r.kind)},
        {"name", r.name},
        {"timing",
         {{"ct_s", ms_to_seconds(r.timing.ct_ms)},
          {"pt_s", ms_to_seconds(r.timing.pt_ms)},
          {"setup_s", ms_to_seconds(r.timing.setup_ms)},
          {"availability", r.timing.availability}}},
    };
    if (r.kind == ResourceKind::kRobot) {
      item["reach_mm"] = r.reach_mm;
      item["payload_kg"] = r.payload_kg;
    }
    if (!r.tool.empty()) item["tool"] = r.tool;
    doc["resources"].push_back(std::move(item));
  }

  if (!s.stages.empty()) {
    doc["stages"] = json::array();
    for (const auto& st : s.stages) {
      doc["stages"].push_back(
          {{"resource", st.resource}, {"tasks", st.tasks}, {"placement", to_string(st.placement)}});
    }
  }
  if (s.rotary_positions != 0) doc["rotary_positions"] = s.rotary_positions;

  doc["simulation"] = {
      {"mode", to_string(s.simulation.mode)},
      {"variability", to_string(s.simulation.variability)},
      {"replications", s.simulation.replications},
      {"seed", s.simulation.seed},
      {"stations", s.simulation.stations},
  };
  if (s.per_station_throughput) {
    doc["planning"] = {{"per_station_throughput", *s.per_station_throughput}};
  }

  if (s.layout) {
    json layout;
    layout["actors"] = json::array();
    for (const auto& a : s.layout->actors) {
      json item{{"id", a.id}, {"kind", to_string(a.kind)}, {"x", a.position.x}, {"y", a.position.y}};
      if (a.kind == ResourceKind::kRobot) {
        item["reach_m"] = a.reach_m;
      } else {
        item["arm_reach_m"] = a.arm_reach_m;
      }
      layout["actors"].push_back(std::move(item));
    }
    layout["estops"] = json::array();
    for (const auto& e : s.layout->estops) layout["estops"].push_back(point_json(e));
    layout["buffers"] = json::array();
    for (const auto& b : s.layout->buffers) {
      layout["buffers"].push_back({{"id", b.id}, {"x", b.position.x}, {"y", b.position.y}});
    }
    layout["handoffs"] = json::array();
    for (const auto& h : s.layout->handoffs) layout["handoffs"].push_back({h.from, h.to});
    doc["layout"] = std::move(layout);
  }
  return doc.dump(2) + "\n";
}

Scenario bundled_scenario() { return load_scenario(bundled_scenario_text()); }

}  // namespace hrc
