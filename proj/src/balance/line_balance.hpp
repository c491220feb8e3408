#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "allocation/allocation.hpp"
#include "model/types.hpp"

namespace hrc {

/// Groups tasks into maximal same-class runs along the topological order and
/// hands runs of each class to that class's resources round-robin. Runs owned
/// by a resource in `offline_resources` become offline stages; they must come
/// after every on-table run. Throws kInfeasible when a class has no resource.
StationConfig build_stages(const AllocationResult& allocation, const PrecedenceGraph& graph,
                           std::span<const Resource> resources,
                           const std::set<std::string, std::less<>>& offline_resources = {},
                           int rotary_positions = 0);

/// Station for a scenario: the explicit `stages` when given (validated),
/// otherwise the output of build_stages.
StationConfig station_config_for(const Scenario& scenario);

/// Checks class consistency, precedence order, resource use and position
/// count of a station. Throws kValidation.
void validate_station_config(const StationConfig& config, const AllocationResult& allocation,
                             const PrecedenceGraph& graph, std::span<const Resource> resources);

/// Fills work/ct/pt of every stage. A resource with one stage lends it its
/// timing; a resource with several splits its timing in proportion to work.
void assign_stage_timings(StationConfig& config, std::span<const Task> tasks,
                          std::span<const Resource> resources);

/// Human-readable mismatches between summed task durations and resource CT.
std::vector<std::string> timing_warnings(const StationConfig& config,
                                         std::span<const Resource> resources);

/// Sum of all stage CTs, on-table and offline.
Millis unit_cycle_time(const StationConfig& config);
/// Sum of all stage PTs.
Millis unit_process_time(const StationConfig& config);

/// Whole seconds of available time per demanded unit, rounded down.
std::int64_t takt_seconds(Millis shift_ms, std::int64_t daily_demand);

/// Working time available to a resource within one shift.
Millis effective_shift_ms(const ResourceTiming& timing, Millis shift_ms);

const Resource& resource_for(const Stage& stage, std::span<const Resource> resources);

/// Interval between table advances in pipelined mode: the largest per-resource
/// sum of on-table PTs.
Millis table_interval_ms(const StationConfig& config);

struct IdleEntry {
  std::string resource;
  Millis idle_ms = 0;  // per table interval (pipelined) or per unit (serial)
};

/// Idle time of each on-table resource while the table waits on others.
std::vector<IdleEntry> idle_report(const StationConfig& config, FlowMode mode);

struct Bottleneck {
  std::size_t stage_index = 0;  // index into StationConfig::all_stages()
  std::string resource;
  Millis pt_ms = 0;
};

/// Stage with the largest PT; the first one on ties.
std::optional<Bottleneck> bottleneck_stage(const StationConfig& config);

struct AnalyticThroughput {
  std::int64_t units_per_day = 0;  // completions on the first day
  std::vector<std::int64_t> per_day;
  std::int64_t total = 0;
  std::int64_t started = 0;
  std::optional<Bottleneck> bottleneck;
  std::optional<Millis> first_table_exit_ms;
  std::optional<Millis> first_completion_ms;
};

/// Deterministic completions when every stage takes exactly its PT. Computed
/// unit by unit from closed timing recurrences, without an event list; the
/// discrete-event engine must agree with it exactly.
AnalyticThroughput analytic_throughput(const StationConfig& config,
                                       std::span<const Resource> resources, Millis shift_ms,
                                       FlowMode mode, int days = 1);

}  // namespace hrc
