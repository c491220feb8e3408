#pragma once

#include <cstdint>

namespace hrc {

struct RampUpPlan {
  std::int64_t total_demand_units = 0;
  std::int64_t horizon_days = 0;
  std::int64_t daily_demand_units = 0;
  std::int64_t per_station_throughput = 0;  // units per day
  std::int64_t stations_needed = 0;
  std::int64_t planned_daily_output = 0;
  std::int64_t planned_total_output = 0;
  std::int64_t surplus_units = 0;

  bool operator==(const RampUpPlan&) const = default;
};

/// ceil(total_demand / days). Throws kValidation when days < 1.
std::int64_t required_daily_rate(std::int64_t total_demand, std::int64_t days);

/// Smallest station count whose combined throughput covers the daily rate.
std::int64_t stations_needed(std::int64_t daily_rate, std::int64_t per_station_throughput);

RampUpPlan plan(std::int64_t total_demand, std::int64_t days, std::int64_t per_station_throughput);

/// Whole units per day usable for planning from a measured (mean) throughput.
std::int64_t plannable_throughput(double measured_units_per_day);

}  // namespace hrc
