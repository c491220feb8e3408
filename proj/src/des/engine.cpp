#include "des/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <sstream>

#include "balance/line_balance.hpp"
#include "des/rng.hpp"
#include "des/variability.hpp"

namespace hrc {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kSetupDone: return "setup_done";
    case EventKind::kStageDone: return "stage_done";
    case EventKind::kTableAdvance: return "table_advance";
    case EventKind::kOfflineStart: return "offline_start";
    case EventKind::kUnitComplete: return "unit_complete";
    case EventKind::kShiftEnd: return "shift_end";
  }
  return "unknown";
}

double SimResult::daily_throughput() const {
  if (daily_completed.empty()) return 0.0;
  return static_cast<double>(completed) / static_cast<double>(daily_completed.size());
}

namespace {

enum class Action { kTableStageDone, kStageMark, kIntervalDone, kOfflineDone, kSetupDone, kShiftEnd };

// Events at the same instant: work completions first, then setups, then the
// end of the shift. Ties within a rank keep scheduling order.
int rank_of(Action a) {
  switch (a) {
    case Action::kSetupDone: return 1;
    case Action::kShiftEnd: return 2;
    default: return 0;
  }
}

struct Pending {
  Millis time = 0;
  int rank = 0;
  std::uint64_t seq = 0;
  Action action = Action::kShiftEnd;
  std::size_t index = 0;  // stage or resource index
  std::int64_t unit = 0;
  int day = 0;

  bool operator>(const Pending& o) const {
    if (time != o.time) return time > o.time;
    if (rank != o.rank) return rank > o.rank;
    return seq > o.seq;
  }
};

struct ResourceState {
  Millis setup_ms = 0;
  Millis effective_ms = 0;
  bool ready = false;
  Millis busy_ms = 0;
};

struct OfflineState {
  std::size_t resource = 0;
  std::deque<std::int64_t> fifo;
  bool busy = false;
  std::optional<Millis> sample;
};

class StationSim {
 public:
  StationSim(const SimModel& model, int station, std::uint64_t seed, std::vector<SimEvent>* trace)
      : model_(model), station_(station), rng_(seed), trace_(trace) {
    for (const auto& r : model.resources) {
      resources_.push_back({r.timing.setup_ms, effective_shift_ms(r.timing, model.shift_ms)});
    }
    for (const auto& s : model.config.on_table) table_resource_.push_back(index_of(s.resource));
    for (const auto& s : model.config.offline) offline_.push_back({.resource = index_of(s.resource), .fifo = {}, .busy = false, .sample = {}});
    positions_.assign(static_cast<std::size_t>(std::max(model.config.rotary_positions, 1)), 0);
    daily_completed_.assign(static_cast<std::size_t>(model.days), 0);
  }

  void run() {
    begin_day(0);
    while (!queue_.empty()) {
      const Pending ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      if (!handle(ev)) break;
      dispatch();
    }
  }

  const std::vector<std::int64_t>& daily_completed() const { return daily_completed_; }
  const std::vector<DayTally>& day_ends() const { return day_ends_; }
  const std::vector<ResourceState>& resources() const { return resources_; }
  std::int64_t started() const { return started_; }
  std::int64_t completed() const { return completed_; }
  std::int64_t wip() const { return count_wip(); }

 private:
  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < model_.resources.size(); ++i) {
      if (model_.resources[i].id == id) return i;
    }
    throw Error(ErrorCode::kValidation, "stage references unknown resource '" + id + "'");
  }

  void schedule(Millis time, Action action, std::size_t index = 0, std::int64_t unit = 0) {
    queue_.push({time, rank_of(action), seq_++, action, index, unit, day_});
  }

  void emit(EventKind kind, std::int64_t unit = 0) {
    if (trace_ != nullptr) trace_->push_back({now_, kind, station_, unit});
  }

  Millis day_start() const { return static_cast<Millis>(day_) * model_.shift_ms; }
  Millis end_of(std::size_t r) const { return day_start() + resources_[r].effective_ms; }

  void begin_day(int day) {
    day_ = day;
    for (std::size_t r = 0; r < resources_.size(); ++r) {
      schedule(day_start() + resources_[r].setup_ms, Action::kSetupDone, r);
    }
    schedule(day_start() + model_.shift_ms, Action::kShiftEnd);
  }

  // Returns false once the horizon is over.
  bool handle(const Pending& ev) {
    switch (ev.action) {
      case Action::kSetupDone:
        emit(EventKind::kSetupDone);
        if (ev.day == day_) resources_[ev.index].ready = true;
        return true;
      case Action::kShiftEnd:
        emit(EventKind::kShiftEnd);
        day_ends_.push_back({started_, completed_, count_wip()});
        for (auto& r : resources_) r.ready = false;
        if (day_ + 1 >= model_.days) return false;
        begin_day(day_ + 1);
        return true;
      case Action::kTableStageDone:
        emit(EventKind::kStageDone, ev.unit);
        emit(EventKind::kTableAdvance, ev.unit);
        table_busy_ = false;
        if (ev.index + 1 < model_.config.on_table.size()) {
          serial_stage_ = ev.index + 1;
        } else {
          serial_unit_ = 0;
          serial_stage_ = 0;
          leave_table(ev.unit);
        }
        return true;
      case Action::kStageMark:
        emit(EventKind::kStageDone, ev.unit);
        return true;
      case Action::kIntervalDone: {
        emit(EventKind::kTableAdvance);
        table_busy_ = false;
        const auto leaving = positions_.back();
        std::rotate(positions_.rbegin(), positions_.rbegin() + 1, positions_.rend());
        positions_.front() = 0;
        if (leaving != 0) leave_table(leaving);
        return true;
      }
      case Action::kOfflineDone: {
        emit(EventKind::kStageDone, ev.unit);
        offline_[ev.index].busy = false;
        if (ev.index + 1 < offline_.size()) {
          offline_[ev.index + 1].fifo.push_back(ev.unit);
        } else {
          complete(ev.unit);
        }
        return true;
      }
    }
    return true;
  }

  void leave_table(std::int64_t unit) {
    if (offline_.empty()) {
      complete(unit);
    } else {
      offline_.front().fifo.push_back(unit);
    }
  }

  void complete(std::int64_t unit) {
    ++completed_;
    ++daily_completed_[static_cast<std::size_t>(day_)];
    emit(EventKind::kUnitComplete, unit);
  }

  Millis sample(const Stage& stage) {
    return sample_duration(stage.ct_ms, stage.pt_ms, model_.variability, rng_);
  }

  void dispatch() {
    if (!model_.config.on_table.empty()) {
      if (model_.mode == FlowMode::kSerial) {
        dispatch_serial();
      } else {
        dispatch_pipelined();
      }
    }
    for (std::size_t k = 0; k < offline_.size(); ++k) dispatch_offline(k);
  }

  void dispatch_serial() {
    if (table_busy_) return;
    const auto& stage = model_.config.on_table[serial_stage_];
    const auto r = table_resource_[serial_stage_];
    if (!resources_[r].ready) return;
    if (!serial_sample_) serial_sample_ = sample(stage);
    const Millis duration = *serial_sample_;
    if (now_ + duration > end_of(r)) return;

    if (serial_unit_ == 0) {
      serial_unit_ = next_unit_++;
      ++started_;
    }
    serial_sample_.reset();
    table_busy_ = true;
    resources_[r].busy_ms += duration;
    schedule(now_ + duration, Action::kTableStageDone, serial_stage_, serial_unit_);
  }

  void dispatch_pipelined() {
    if (table_busy_) return;
    Millis table_end = day_start() + model_.shift_ms;
    for (const auto r : table_resource_) {
      if (!resources_[r].ready) return;
      table_end = std::min(table_end, end_of(r));
    }
    const auto& stages = model_.config.on_table;
    if (interval_samples_.empty()) {
      for (const auto& s : stages) interval_samples_.push_back(sample(s));
    }
    // A resource owning several stages works them one after another.
    std::map<std::size_t, Millis> load;
    for (std::size_t i = 0; i < stages.size(); ++i) load[table_resource_[i]] += interval_samples_[i];
    Millis interval = 0;
    for (const auto& [r, total] : load) interval = std::max(interval, total);
    if (now_ + interval > table_end) return;

    positions_.front() = next_unit_++;
    ++started_;
    std::map<std::size_t, Millis> offset;
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const auto r = table_resource_[i];
      offset[r] += interval_samples_[i];
      if (positions_[i] != 0) {
        resources_[r].busy_ms += interval_samples_[i];
        schedule(now_ + offset[r], Action::kStageMark, i, positions_[i]);
      }
    }
    interval_samples_.clear();
    table_busy_ = true;
    schedule(now_ + interval, Action::kIntervalDone);
  }

  void dispatch_offline(std::size_t k) {
    auto& st = offline_[k];
    if (st.busy || st.fifo.empty() || !resources_[st.resource].ready) return;
    if (!st.sample) st.sample = sample(model_.config.offline[k]);
    const Millis duration = *st.sample;
    if (now_ + duration > end_of(st.resource)) return;

    const auto unit = st.fifo.front();
    st.fifo.pop_front();
    st.sample.reset();
    st.busy = true;
    resources_[st.resource].busy_ms += duration;
    emit(EventKind::kOfflineStart, unit);
    schedule(now_ + duration, Action::kOfflineDone, k, unit);
  }

  std::int64_t count_wip() const {
    std::int64_t wip = serial_unit_ != 0 ? 1 : 0;
    if (model_.mode == FlowMode::kPipelined) {
      wip = std::count_if(positions_.begin(), positions_.end(), [](auto u) { return u != 0; });
    }
    for (const auto& st : offline_) wip += static_cast<std::int64_t>(st.fifo.size()) + (st.busy ? 1 : 0);
    return wip;
  }

  const SimModel& model_;
  int station_;
  Rng rng_;
  std::vector<SimEvent>* trace_;

  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  Millis now_ = 0;
  int day_ = 0;

  std::vector<ResourceState> resources_;
  std::vector<std::size_t> table_resource_;
  std::vector<OfflineState> offline_;

  bool table_busy_ = false;
  // Serial mode: the unit on the table and the stage it waits for.
  std::int64_t serial_unit_ = 0;
  std::size_t serial_stage_ = 0;
  std::optional<Millis> serial_sample_;
  // Pipelined mode: unit at each rotary position (0 = empty).
  std::vector<std::int64_t> positions_;
  std::vector<Millis> interval_samples_;

  std::int64_t next_unit_ = 1;
  std::int64_t started_ = 0;
  std::int64_t completed_ = 0;
  std::vector<std::int64_t> daily_completed_;
  std::vector<DayTally> day_ends_;
};

}  // namespace

SimModel make_sim_model(const Scenario& scenario, const SimOverrides& overrides) {
  SimModel model;
  model.config = station_config_for(scenario);
  model.resources = scenario.resources;
  model.shift_ms = scenario.shift_ms;
  model.days = overrides.days.value_or(scenario.horizon_days);
  model.stations = overrides.stations.value_or(scenario.simulation.stations);
  model.mode = overrides.mode.value_or(scenario.simulation.mode);
  model.variability = overrides.variability.value_or(scenario.simulation.variability);
  if (model.days < 1) throw Error(ErrorCode::kValidation, "horizon must be at least one day");
  if (model.stations < 1) throw Error(ErrorCode::kValidation, "need at least one station");
  return model;
}

SimResult run_replication(const SimModel& model, std::uint64_t seed, std::vector<SimEvent>* trace) {
  if (model.shift_ms <= 0 || model.days < 1 || model.stations < 1) {
    throw Error(ErrorCode::kValidation, "simulation needs a positive shift, horizon and station count");
  }

  SimResult result;
  result.daily_completed.assign(static_cast<std::size_t>(model.days), 0);
  result.day_ends.assign(static_cast<std::size_t>(model.days), {});
  std::vector<Millis> busy(model.resources.size(), 0);
  std::vector<Millis> available(model.resources.size(), 0);

  std::vector<SimEvent> merged;
  for (int station = 0; station < model.stations; ++station) {
    std::vector<SimEvent> local;
    StationSim sim(model, station, derive_seed(seed, static_cast<std::uint64_t>(station)),
                   trace != nullptr ? &local : nullptr);
    sim.run();
    for (std::size_t d = 0; d < result.daily_completed.size(); ++d) {
      result.daily_completed[d] += sim.daily_completed()[d];
      result.day_ends[d].started += sim.day_ends()[d].started;
      result.day_ends[d].completed += sim.day_ends()[d].completed;
      result.day_ends[d].wip += sim.day_ends()[d].wip;
    }
    result.started += sim.started();
    result.completed += sim.completed();
    result.wip += sim.wip();
    for (std::size_t r = 0; r < busy.size(); ++r) {
      busy[r] += sim.resources()[r].busy_ms;
      available[r] += sim.resources()[r].effective_ms * model.days;
    }
    merged.insert(merged.end(), local.begin(), local.end());
  }

  for (std::size_t r = 0; r < busy.size(); ++r) {
    result.resource_ids.push_back(model.resources[r].id);
    result.utilization.push_back(available[r] > 0 ? static_cast<double>(busy[r]) / static_cast<double>(available[r])
                                                  : 0.0);
  }
  if (trace != nullptr) {
    std::stable_sort(merged.begin(), merged.end(),
                     [](const SimEvent& a, const SimEvent& b) { return a.time_ms < b.time_ms; });
    trace->insert(trace->end(), merged.begin(), merged.end());
  }
  return result;
}

SimResult run_replication(const Scenario& scenario, std::uint64_t seed) {
  return run_replication(make_sim_model(scenario), seed);
}

std::vector<SimEvent> event_trace(const SimModel& model, std::uint64_t seed) {
  std::vector<SimEvent> trace;
  run_replication(model, seed, &trace);
  return trace;
}

std::vector<SimEvent> event_trace(const Scenario& scenario, std::uint64_t seed) {
  return event_trace(make_sim_model(scenario), seed);
}

std::string trace_csv(std::span<const SimEvent> events) {
  std::ostringstream out;
  out << "time_ms,kind,station,unit\n";
  for (const auto& e : events) {
    out << e.time_ms << ',' << to_string(e.kind) << ',' << e.station << ',' << e.unit << '\n';
  }
  return out.str();
}

}  // namespace hrc
