#pragma once

// Domain types shared by every hrc module. All values are immutable after a
// scenario is loaded; times are integer milliseconds.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hrc {

using Millis = std::int64_t;

constexpr Millis kMillisPerSecond = 1000;

/// Rounds a (possibly fractional) number of seconds to whole milliseconds.
Millis seconds_to_ms(double seconds);
double ms_to_seconds(Millis ms);

enum class ErrorCode {
  kParse,       // malformed document
  kValidation,  // schema or invariant violation
  kInfeasible,  // well-formed input that admits no configuration
  kIo,
};

/// Error carrying a category and, when known, the field path that caused it
/// (e.g. `tasks[3].duration_s`).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

std::string_view to_string(ErrorCode code);

/// Five binary automation attributes of a task. A flag is 1 when the robot
/// can handle that aspect of the task.
struct AttributeRating {
  bool shape = false;
  bool feeding = false;
  bool mounting = false;
  bool joining = false;
  bool safety = false;

  static constexpr unsigned kCount = 5;
  static constexpr unsigned kDistinctValues = 1u << kCount;

  /// Bit i of `bits` maps to attribute i in S, F, M, J, Sf order.
  static AttributeRating from_bits(unsigned bits);
  /// Throws kValidation unless every value is exactly 0 or 1.
  static AttributeRating from_ints(int s, int f, int m, int j, int sf);

  unsigned bits() const noexcept;
  bool operator==(const AttributeRating&) const = default;
};

/// Short symbols of the attributes, in bit order.
inline constexpr std::string_view kAttributeSymbols[AttributeRating::kCount] = {
    "S", "F", "M", "J", "Sf"};

enum class TaskKind { kPickPlace, kScrew, kAdjust, kTest, kTransport, kOther };

std::string_view to_string(TaskKind kind);
std::optional<TaskKind> parse_task_kind(std::string_view text);

struct Task {
  std::string id;
  std::string name;
  Millis duration_ms = 0;
  AttributeRating attributes;
  TaskKind kind = TaskKind::kOther;

  bool operator==(const Task&) const = default;
};

struct Edge {
  std::string from;
  std::string to;

  bool operator==(const Edge&) const = default;
};

struct PrecedenceGraph {
  std::vector<std::string> task_ids;
  std::vector<Edge> edges;

  bool operator==(const PrecedenceGraph&) const = default;
};

enum class ResourceKind { kHuman, kRobot };

std::string_view to_string(ResourceKind kind);
std::optional<ResourceKind> parse_resource_kind(std::string_view text);

/// Per-resource timing quadruple: cycle, process (cycle plus waiting), setup
/// and availability.
struct ResourceTiming {
  Millis ct_ms = 0;
  Millis pt_ms = 0;
  Millis setup_ms = 0;
  double availability = 1.0;

  bool operator==(const ResourceTiming&) const = default;
};

struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::kHuman;
  std::string name;
  double reach_mm = 0.0;    // robots only
  double payload_kg = 0.0;  // robots only
  std::string tool;
  ResourceTiming timing;

  bool operator==(const Resource&) const = default;
};

enum class Placement { kOnTable, kOffline };

std::string_view to_string(Placement placement);

/// A resource's share of the per-unit work on a station.
struct Stage {
  std::string resource;
  std::vector<std::string> tasks;
  Placement placement = Placement::kOnTable;
  Millis work_ms = 0;  // sum of task durations
  Millis ct_ms = 0;    // from the resource timing
  Millis pt_ms = 0;

  bool operator==(const Stage&) const = default;
};

/// Rotary-table station: on-table stages in rotation order followed by
/// offline stages fed from the output conveyor.
struct StationConfig {
  std::vector<Stage> on_table;
  std::vector<Stage> offline;
  int rotary_positions = 0;

  /// On-table stages first, then offline; this is the global stage index.
  std::vector<const Stage*> all_stages() const;
  bool empty() const noexcept { return on_table.empty() && offline.empty(); }
  bool operator==(const StationConfig&) const = default;
};

enum class FlowMode { kSerial, kPipelined };
enum class VariabilityKind { kDeterministic, kTriangular };

std::string_view to_string(FlowMode mode);
std::optional<FlowMode> parse_flow_mode(std::string_view text);
std::string_view to_string(VariabilityKind kind);
std::optional<VariabilityKind> parse_variability(std::string_view text);

struct SimulationSettings {
  FlowMode mode = FlowMode::kSerial;
  VariabilityKind variability = VariabilityKind::kDeterministic;
  int replications = 1;
  std::uint64_t seed = 1;
  int stations = 1;

  bool operator==(const SimulationSettings&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

constexpr double kDefaultArmReachM = 0.8;

struct Actor {
  std::string id;
  ResourceKind kind = ResourceKind::kHuman;
  Point position;
  double reach_m = 0.0;                    // robot envelope radius
  double arm_reach_m = kDefaultArmReachM;  // human workspace radius

  bool operator==(const Actor&) const = default;
};

struct BufferNode {
  std::string id;
  Point position;

  bool operator==(const BufferNode&) const = default;
};

struct Layout {
  std::vector<Actor> actors;
  std::vector<Point> estops;
  std::vector<Edge> handoffs;
  std::vector<BufferNode> buffers;

  const Actor* find_actor(std::string_view id) const;
  bool operator==(const Layout&) const = default;
};

/// Station stage as written in a scenario, before timings are attached.
struct StageSpec {
  std::string resource;
  std::vector<std::string> tasks;
  Placement placement = Placement::kOnTable;

  bool operator==(const StageSpec&) const = default;
};

struct Scenario {
  std::string name;
  std::vector<Task> tasks;
  PrecedenceGraph precedence;
  std::vector<Resource> resources;
  std::vector<StageSpec> stages;  // empty: derive with build_stages
  int rotary_positions = 0;       // 0: one position per on-table stage
  Millis shift_ms = 27'000 * kMillisPerSecond;
  std::int64_t demand_units = 0;
  int horizon_days = 1;
  SimulationSettings simulation;
  std::optional<double> per_station_throughput;
  std::optional<Layout> layout;

  const Task* find_task(std::string_view id) const;
  const Resource* find_resource(std::string_view id) const;

  bool operator==(const Scenario&) const = default;
};

}  // namespace hrc
