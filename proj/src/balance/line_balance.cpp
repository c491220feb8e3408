#include "balance/line_balance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "model/precedence.hpp"

namespace hrc {

namespace {

ResourceKind kind_for(ResourceClass c) {
  return c == ResourceClass::kRobotEligible ? ResourceKind::kRobot : ResourceKind::kHuman;
}

std::map<std::string, std::size_t, std::less<>> stage_positions(const StationConfig& config) {
  std::map<std::string, std::size_t, std::less<>> out;
  const auto stages = config.all_stages();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    for (const auto& t : stages[i]->tasks) out.emplace(t, i);
  }
  return out;
}

}  // namespace

const Resource& resource_for(const Stage& stage, std::span<const Resource> resources) {
  for (const auto& r : resources) {
    if (r.id == stage.resource) return r;
  }
  throw Error(ErrorCode::kValidation, "unknown resource '" + stage.resource + "'");
}

Millis effective_shift_ms(const ResourceTiming& timing, Millis shift_ms) {
  return static_cast<Millis>(std::llround(timing.availability * static_cast<double>(shift_ms)));
}

StationConfig build_stages(const AllocationResult& allocation, const PrecedenceGraph& graph,
                           std::span<const Resource> resources,
                           const std::set<std::string, std::less<>>& offline_resources,
                           int rotary_positions) {
  const auto order = topological_order(graph);

  struct Run {
    ResourceClass cls;
    std::vector<std::string> tasks;
  };
  std::vector<Run> runs;
  for (const auto& id : order) {
    const auto cls = allocation.class_of(id);
    if (runs.empty() || runs.back().cls != cls) runs.push_back({cls, {}});
    runs.back().tasks.push_back(id);
  }

  std::map<ResourceClass, std::vector<const Resource*>> pool;
  for (const auto& r : resources) {
    for (auto cls : {ResourceClass::kRobotEligible, ResourceClass::kHumanRequired}) {
      if (kind_for(cls) == r.kind) pool[cls].push_back(&r);
    }
  }

  StationConfig config;
  std::map<ResourceClass, std::size_t> next;
  for (auto& run : runs) {
    const auto& candidates = pool[run.cls];
    if (candidates.empty()) {
      throw Error(ErrorCode::kInfeasible, "no " + std::string(to_string(kind_for(run.cls))) +
                                              " resource available for task '" + run.tasks.front() +
                                              "'");
    }
    const Resource* owner = candidates[next[run.cls]++ % candidates.size()];
    Stage stage{.resource = owner->id, .tasks = std::move(run.tasks)};
    if (offline_resources.contains(owner->id)) {
      stage.placement = Placement::kOffline;
      config.offline.push_back(std::move(stage));
    } else {
      if (!config.offline.empty()) {
        throw Error(ErrorCode::kInfeasible,
                    "on-table work on '" + owner->id + "' follows an offline stage");
      }
      config.on_table.push_back(std::move(stage));
    }
  }
  std::set<std::string, std::less<>> offline_owners;
  for (const auto& s : config.offline) {
    if (!offline_owners.insert(s.resource).second) {
      throw Error(ErrorCode::kInfeasible, "offline resource '" + s.resource + "' would own two stages");
    }
  }
  config.rotary_positions = std::max<int>(rotary_positions, static_cast<int>(config.on_table.size()));
  return config;
}

void validate_station_config(const StationConfig& config, const AllocationResult& allocation,
                             const PrecedenceGraph& graph, std::span<const Resource> resources) {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kValidation, message, "stages");
  };

  if (config.rotary_positions < static_cast<int>(config.on_table.size())) {
    fail("rotary_positions is smaller than the number of on-table stages");
  }

  std::set<std::string, std::less<>> on_table_owners;
  std::set<std::string, std::less<>> offline_owners;
  for (const auto* stage : config.all_stages()) {
    const auto& r = resource_for(*stage, resources);
    for (const auto& t : stage->tasks) {
      if (kind_for(allocation.class_of(t)) != r.kind) {
        fail("task '" + t + "' is " + std::string(to_string(allocation.class_of(t))) +
             " work but is staged on " + std::string(to_string(r.kind)) + " '" + r.id + "'");
      }
    }
    if (stage->placement == Placement::kOffline) {
      if (!offline_owners.insert(r.id).second || on_table_owners.contains(r.id)) {
        fail("offline resource '" + r.id + "' must own exactly one stage");
      }
    } else {
      if (offline_owners.contains(r.id)) fail("offline resource '" + r.id + "' must own exactly one stage");
      on_table_owners.insert(r.id);
    }
    if (r.timing.pt_ms <= 0) fail("resource '" + r.id + "' owns a stage but has zero process time");
  }

  const auto position = stage_positions(config);
  const auto stages = config.all_stages();
  for (const auto& e : graph.edges) {
    const auto from = position.find(e.from);
    const auto to = position.find(e.to);
    if (from == position.end() || to == position.end()) continue;
    if (from->second > to->second) {
      fail("stage order violates precedence " + e.from + " -> " + e.to);
    }
    if (from->second == to->second) {
      const auto& tasks = stages[from->second]->tasks;
      const auto a = std::find(tasks.begin(), tasks.end(), e.from);
      const auto b = std::find(tasks.begin(), tasks.end(), e.to);
      if (a > b) fail("task order inside a stage violates precedence " + e.from + " -> " + e.to);
    }
  }
}

void assign_stage_timings(StationConfig& config, std::span<const Task> tasks,
                          std::span<const Resource> resources) {
  auto duration_of = [&](const std::string& id) -> Millis {
    for (const auto& t : tasks) {
      if (t.id == id) return t.duration_ms;
    }
    throw Error(ErrorCode::kValidation, "unknown task '" + id + "'");
  };

  std::map<std::string, std::vector<Stage*>, std::less<>> by_resource;
  for (auto* list : {&config.on_table, &config.offline}) {
    for (auto& stage : *list) {
      stage.work_ms = 0;
      for (const auto& t : stage.tasks) stage.work_ms += duration_of(t);
      by_resource[stage.resource].push_back(&stage);
    }
  }

  for (auto& [id, owned] : by_resource) {
    const auto& timing = resource_for(*owned.front(), resources).timing;
    if (owned.size() == 1) {
      owned.front()->ct_ms = timing.ct_ms;
      owned.front()->pt_ms = timing.pt_ms;
      continue;
    }
    Millis total_work = 0;
    for (const auto* s : owned) total_work += s->work_ms;
    __extension__ using Wide = __int128;
    auto split = [&](Millis total) {
      std::vector<Millis> parts;
      Millis assigned = 0;
      for (std::size_t i = 0; i < owned.size(); ++i) {
        Millis part = 0;
        if (i + 1 == owned.size()) {
          part = total - assigned;
        } else if (total_work > 0) {
          part = static_cast<Millis>(static_cast<Wide>(total) * owned[i]->work_ms / total_work);
        } else {
          part = total / static_cast<Millis>(owned.size());
        }
        assigned += part;
        parts.push_back(part);
      }
      return parts;
    };
    const auto cts = split(timing.ct_ms);
    const auto pts = split(timing.pt_ms);
    for (std::size_t i = 0; i < owned.size(); ++i) {
      owned[i]->ct_ms = cts[i];
      owned[i]->pt_ms = std::max(pts[i], cts[i]);
    }
  }
}

StationConfig station_config_for(const Scenario& scenario) {
  const auto allocation = allocate_tasks(scenario.tasks);
  StationConfig config;
  if (scenario.stages.empty()) {
    config = build_stages(allocation, scenario.precedence, scenario.resources, {},
                          scenario.rotary_positions);
  } else {
    for (const auto& spec : scenario.stages) {
      Stage stage{.resource = spec.resource, .tasks = spec.tasks, .placement = spec.placement};
      (spec.placement == Placement::kOffline ? config.offline : config.on_table).push_back(std::move(stage));
    }
    config.rotary_positions = scenario.rotary_positions == 0
                                  ? static_cast<int>(config.on_table.size())
                                  : scenario.rotary_positions;
    validate_station_config(config, allocation, scenario.precedence, scenario.resources);
  }
  for (const auto* stage : config.all_stages()) {
    if (resource_for(*stage, scenario.resources).timing.pt_ms <= 0) {
      throw Error(ErrorCode::kValidation,
                  "resource '" + stage->resource + "' owns a stage but has zero process time");
    }
  }
  assign_stage_timings(config, scenario.tasks, scenario.resources);
  return config;
}

std::vector<std::string> timing_warnings(const StationConfig& config,
                                         std::span<const Resource> resources) {
  std::map<std::string, Millis, std::less<>> work;
  for (const auto* s : config.all_stages()) work[s->resource] += s->work_ms;
  std::vector<std::string> out;
  for (const auto& [id, sum] : work) {
    for (const auto& r : resources) {
      if (r.id == id && r.timing.ct_ms != sum) {
        out.push_back("resource '" + id + "': task durations sum to " +
                      std::to_string(ms_to_seconds(sum)) + " s but cycle time is " +
                      std::to_string(ms_to_seconds(r.timing.ct_ms)) + " s");
      }
    }
  }
  return out;
}

Millis unit_cycle_time(const StationConfig& config) {
  Millis total = 0;
  for (const auto* s : config.all_stages()) total += s->ct_ms;
  return total;
}

Millis unit_process_time(const StationConfig& config) {
  Millis total = 0;
  for (const auto* s : config.all_stages()) total += s->pt_ms;
  return total;
}

std::int64_t takt_seconds(Millis shift_ms, std::int64_t daily_demand) {
  if (daily_demand <= 0) throw Error(ErrorCode::kValidation, "takt needs a positive daily demand");
  if (shift_ms <= 0) throw Error(ErrorCode::kValidation, "takt needs a positive shift");
  return shift_ms / (daily_demand * kMillisPerSecond);
}

Millis table_interval_ms(const StationConfig& config) {
  std::map<std::string, Millis, std::less<>> per_resource;
  for (const auto& s : config.on_table) per_resource[s.resource] += s.pt_ms;
  Millis interval = 0;
  for (const auto& [id, pt] : per_resource) interval = std::max(interval, pt);
  return interval;
}

std::vector<IdleEntry> idle_report(const StationConfig& config, FlowMode mode) {
  std::vector<IdleEntry> out;
  Millis table_total = 0;
  for (const auto& s : config.on_table) {
    table_total += s.pt_ms;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.resource == s.resource; });
    if (it == out.end()) {
      out.push_back({s.resource, s.pt_ms});
    } else {
      it->idle_ms += s.pt_ms;
    }
  }
  // idle_ms currently holds each resource's own on-table PT.
  const Millis reference = mode == FlowMode::kPipelined ? table_interval_ms(config) : table_total;
  for (auto& e : out) e.idle_ms = reference - e.idle_ms;
  return out;
}

std::optional<Bottleneck> bottleneck_stage(const StationConfig& config) {
  const auto stages = config.all_stages();
  std::optional<Bottleneck> best;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (!best || stages[i]->pt_ms > best->pt_ms) {
      best = Bottleneck{i, stages[i]->resource, stages[i]->pt_ms};
    }
  }
  return best;
}

}  // namespace hrc
