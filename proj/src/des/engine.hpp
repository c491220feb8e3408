#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace hrc {

enum class EventKind { kSetupDone, kStageDone, kTableAdvance, kOfflineStart, kUnitComplete, kShiftEnd };

std::string_view to_string(EventKind kind);

struct SimEvent {
  Millis time_ms = 0;
  EventKind kind = EventKind::kShiftEnd;
  int station = 0;
  std::int64_t unit = 0;  // 0 when the event concerns no unit

  bool operator==(const SimEvent&) const = default;
};

/// Cumulative unit counts at the end of a day. `wip` is counted from the
/// units physically present in the station, not derived from the others.
struct DayTally {
  std::int64_t started = 0;
  std::int64_t completed = 0;
  std::int64_t wip = 0;

  bool operator==(const DayTally&) const = default;
};

/// One replication.
struct SimResult {
  std::vector<std::int64_t> daily_completed;
  std::vector<std::string> resource_ids;
  std::vector<double> utilization;  // parallel to resource_ids, in [0, 1]
  std::vector<DayTally> day_ends;
  std::int64_t started = 0;
  std::int64_t completed = 0;
  std::int64_t wip = 0;

  double daily_throughput() const;
  bool operator==(const SimResult&) const = default;
};

/// Everything the engine needs, with timings already attached to stages.
struct SimModel {
  StationConfig config;
  std::vector<Resource> resources;
  Millis shift_ms = 0;
  int days = 1;
  int stations = 1;
  FlowMode mode = FlowMode::kSerial;
  VariabilityKind variability = VariabilityKind::kDeterministic;
};

struct SimOverrides {
  std::optional<FlowMode> mode;
  std::optional<VariabilityKind> variability;
  std::optional<int> days;
  std::optional<int> stations;
};

SimModel make_sim_model(const Scenario& scenario, const SimOverrides& overrides = {});

/// One replication. Per day every resource sets up in parallel, then works
/// until its effective shift end; a stage only starts if it also finishes by
/// then. Units left on the table or in conveyor buffers carry over to the
/// next day. When `trace` is given, the full event log is appended to it.
SimResult run_replication(const SimModel& model, std::uint64_t seed,
                          std::vector<SimEvent>* trace = nullptr);
SimResult run_replication(const Scenario& scenario, std::uint64_t seed);

std::vector<SimEvent> event_trace(const SimModel& model, std::uint64_t seed);
std::vector<SimEvent> event_trace(const Scenario& scenario, std::uint64_t seed);

/// `time_ms,kind,station,unit` with a header row.
std::string trace_csv(std::span<const SimEvent> events);

struct AggregateResult {
  std::vector<SimResult> replications;  // by replication index
  std::vector<std::uint64_t> seeds;
  double mean_daily_throughput = 0.0;
  double ci_half_width = 0.0;  // Student-t, 95 %
  std::vector<std::string> resource_ids;
  std::vector<double> mean_utilization;
  double mean_wip = 0.0;
  double mean_completed = 0.0;
};

/// Seed of replication `index`.
std::uint64_t replication_seed(std::uint64_t base_seed, int index);

/// Runs `replications` independent replications, in parallel when
/// `threads` != 1 (0 picks the hardware concurrency). Results do not depend
/// on the thread count.
AggregateResult replicate(const SimModel& model, int replications, std::uint64_t base_seed,
                          unsigned threads = 0);

/// Mean and 95 % Student-t half-width of a sample; half-width 0 for n < 2.
std::pair<double, double> mean_and_half_width(std::span<const double> sample);

}  // namespace hrc
