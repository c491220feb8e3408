#include <algorithm>

#include "balance/line_balance.hpp"

namespace hrc {

namespace {

// Daily working window of one resource (or of the whole table): work may
// start once setup is done and must finish by the effective shift end.
struct Window {
  Millis ready_ms = 0;  // offset from day start
  Millis end_ms = 0;    // offset from day start
};

class Calendar {
 public:
  Calendar(Millis shift_ms, int days) : shift_(shift_ms), days_(days) {}

  // Earliest start >= t at which `duration` fits inside a window, if any
  // within the horizon. An instant on a day boundary still belongs to the
  // day that is ending.
  std::optional<Millis> earliest_fit(Millis t, Millis duration, const Window& w) const {
    const std::int64_t first_day = t == 0 ? 0 : (t - 1) / shift_;
    for (std::int64_t d = first_day; d < days_; ++d) {
      const Millis day_start = d * shift_;
      const Millis start = std::max(t, day_start + w.ready_ms);
      if (start + duration <= day_start + w.end_ms) return start;
    }
    return std::nullopt;
  }

  int day_of(Millis t) const { return t == 0 ? 0 : static_cast<int>((t - 1) / shift_); }

 private:
  Millis shift_;
  int days_;
};

Window window_of(const Resource& r, Millis shift_ms) {
  return {r.timing.setup_ms, effective_shift_ms(r.timing, shift_ms)};
}

struct OfflineStep {
  Millis pt = 0;
  Window window;
  Millis free_at = 0;
  bool blocked = false;  // nothing else can pass this stage within the horizon
};

}  // namespace

AnalyticThroughput analytic_throughput(const StationConfig& config,
                                       std::span<const Resource> resources, Millis shift_ms,
                                       FlowMode mode, int days) {
  AnalyticThroughput out;
  out.per_day.assign(static_cast<std::size_t>(std::max(days, 0)), 0);
  out.bottleneck = bottleneck_stage(config);
  if (config.on_table.empty() || days <= 0) return out;

  if (unit_process_time(StationConfig{config.on_table, {}, 0}) <= 0) {
    throw Error(ErrorCode::kValidation, "on-table stages need a positive total process time");
  }
  const Calendar calendar(shift_ms, days);

  std::vector<OfflineStep> offline;
  for (const auto& s : config.offline) {
    offline.push_back({s.pt_ms, window_of(resource_for(s, resources), shift_ms)});
  }

  // Sends one unit through the offline chain; records its completion.
  auto finish_unit = [&](Millis table_exit) {
    if (!out.first_table_exit_ms) out.first_table_exit_ms = table_exit;
    Millis arrival = table_exit;
    for (auto& step : offline) {
      if (step.blocked) return;
      const auto start = calendar.earliest_fit(std::max(arrival, step.free_at), step.pt, step.window);
      if (!start) {
        step.blocked = true;
        return;
      }
      step.free_at = *start + step.pt;
      arrival = step.free_at;
    }
    if (!out.first_completion_ms) out.first_completion_ms = arrival;
    ++out.per_day[static_cast<std::size_t>(calendar.day_of(arrival))];
    ++out.total;
  };

  if (mode == FlowMode::kSerial) {
    std::vector<std::pair<Millis, Window>> table;
    for (const auto& s : config.on_table) {
      table.emplace_back(s.pt_ms, window_of(resource_for(s, resources), shift_ms));
    }
    Millis table_free = 0;
    for (;;) {
      Millis t = table_free;
      bool stuck = false;
      for (std::size_t i = 0; i < table.size(); ++i) {
        const auto start = calendar.earliest_fit(t, table[i].first, table[i].second);
        if (!start) {
          stuck = true;
          break;
        }
        if (i == 0) ++out.started;
        t = *start + table[i].first;
      }
      if (stuck) break;
      table_free = t;
      finish_unit(t);
    }
  } else {
    // The table only turns while every on-table resource is working.
    Window table_window{0, shift_ms};
    for (const auto& s : config.on_table) {
      const auto w = window_of(resource_for(s, resources), shift_ms);
      table_window.ready_ms = std::max(table_window.ready_ms, w.ready_ms);
      table_window.end_ms = std::min(table_window.end_ms, w.end_ms);
    }
    const Millis interval = table_interval_ms(config);
    const auto positions = static_cast<std::size_t>(std::max<int>(config.rotary_positions, 1));

    // Interval j loads unit j; the unit leaves when interval j + positions - 1 ends.
    std::vector<Millis> starts;
    Millis t = 0;
    while (const auto start = calendar.earliest_fit(t, interval, table_window)) {
      starts.push_back(*start);
      t = *start + interval;
    }
    out.started = static_cast<std::int64_t>(starts.size());
    for (std::size_t j = 0; j + positions - 1 < starts.size(); ++j) {
      finish_unit(starts[j + positions - 1] + interval);
    }
  }

  if (!out.per_day.empty()) out.units_per_day = out.per_day.front();
  return out;
}

}  // namespace hrc
