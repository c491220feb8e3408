#include "model/types.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace hrc {

Millis seconds_to_ms(double seconds) {
  return static_cast<Millis>(std::llround(seconds * static_cast<double>(kMillisPerSecond)));
}

double ms_to_seconds(Millis ms) {
  return static_cast<double>(ms) / static_cast<double>(kMillisPerSecond);
}

Error::Error(ErrorCode code, std::string message, std::string path)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      code_(code),
      path_(std::move(path)) {}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

AttributeRating AttributeRating::from_bits(unsigned bits) {
  if (bits >= kDistinctValues) {
    throw Error(ErrorCode::kValidation, "attribute bit pattern out of range: " + std::to_string(bits));
  }
  return AttributeRating{
      .shape = (bits & 1u) != 0,
      .feeding = (bits & 2u) != 0,
      .mounting = (bits & 4u) != 0,
      .joining = (bits & 8u) != 0,
      .safety = (bits & 16u) != 0,
  };
}

AttributeRating AttributeRating::from_ints(int s, int f, int m, int j, int sf) {
  const std::array<int, kCount> values{s, f, m, j, sf};
  unsigned bits = 0;
  for (unsigned i = 0; i < kCount; ++i) {
    if (values[i] != 0 && values[i] != 1) {
      throw Error(ErrorCode::kValidation,
                  "attribute must be 0 or 1, got " + std::to_string(values[i]),
                  std::string(kAttributeSymbols[i]));
    }
    bits |= static_cast<unsigned>(values[i]) << i;
  }
  return from_bits(bits);
}

unsigned AttributeRating::bits() const noexcept {
  return (shape ? 1u : 0u) | (feeding ? 2u : 0u) | (mounting ? 4u : 0u) | (joining ? 8u : 0u) |
         (safety ? 16u : 0u);
}

namespace {

constexpr std::array<std::pair<TaskKind, std::string_view>, 6> kTaskKinds{{
    {TaskKind::kPickPlace, "pick_place"},
    {TaskKind::kScrew, "screw"},
    {TaskKind::kAdjust, "adjust"},
    {TaskKind::kTest, "test"},
    {TaskKind::kTransport, "transport"},
    {TaskKind::kOther, "other"},
}};

}  // namespace

std::string_view to_string(TaskKind kind) {
  for (const auto& [k, name] : kTaskKinds) {
    if (k == kind) return name;
  }
  return "other";
}

std::optional<TaskKind> parse_task_kind(std::string_view text) {
  for (const auto& [k, name] : kTaskKinds) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ResourceKind kind) {
  return kind == ResourceKind::kRobot ? "robot" : "human";
}

std::optional<ResourceKind> parse_resource_kind(std::string_view text) {
  if (text == "robot" || text == "Robot") return ResourceKind::kRobot;
  if (text == "human" || text == "Human") return ResourceKind::kHuman;
  return std::nullopt;
}

std::string_view to_string(Placement placement) {
  return placement == Placement::kOffline ? "offline" : "on_table";
}

std::string_view to_string(FlowMode mode) {
  return mode == FlowMode::kPipelined ? "pipelined" : "serial";
}

std::optional<FlowMode> parse_flow_mode(std::string_view text) {
  if (text == "serial") return FlowMode::kSerial;
  if (text == "pipelined") return FlowMode::kPipelined;
  return std::nullopt;
}

std::string_view to_string(VariabilityKind kind) {
  return kind == VariabilityKind::kTriangular ? "triangular" : "deterministic";
}

std::optional<VariabilityKind> parse_variability(std::string_view text) {
  if (text == "deterministic") return VariabilityKind::kDeterministic;
  if (text == "triangular") return VariabilityKind::kTriangular;
  return std::nullopt;
}

std::vector<const Stage*> StationConfig::all_stages() const {
  std::vector<const Stage*> out;
  out.reserve(on_table.size() + offline.size());
  for (const auto& s : on_table) out.push_back(&s);
  for (const auto& s : offline) out.push_back(&s);
  return out;
}

const Actor* Layout::find_actor(std::string_view id) const {
  for (const auto& a : actors) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

const Task* Scenario::find_task(std::string_view id) const {
  for (const auto& t : tasks) {
    if (t.id == id) return &t;
  }
  return nullptr;
}

const Resource* Scenario::find_resource(std::string_view id) const {
  for (const auto& r : resources) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

}  // namespace hrc
