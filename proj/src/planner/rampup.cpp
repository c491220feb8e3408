#include "planner/rampup.hpp"

#include <cmath>

#include "model/types.hpp"

namespace hrc {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a / b + (a % b != 0 ? 1 : 0); }

}  // namespace

std::int64_t required_daily_rate(std::int64_t total_demand, std::int64_t days) {
  if (days < 1) throw Error(ErrorCode::kValidation, "planning horizon must be at least one day");
  if (total_demand < 0) throw Error(ErrorCode::kValidation, "demand must be non-negative");
  return ceil_div(total_demand, days);
}

std::int64_t stations_needed(std::int64_t daily_rate, std::int64_t per_station_throughput) {
  if (per_station_throughput <= 0) {
    throw Error(ErrorCode::kValidation, "per-station throughput must be positive");
  }
  if (daily_rate < 0) throw Error(ErrorCode::kValidation, "daily rate must be non-negative");
  return ceil_div(daily_rate, per_station_throughput);
}

RampUpPlan plan(std::int64_t total_demand, std::int64_t days, std::int64_t per_station_throughput) {
  RampUpPlan p;
  p.total_demand_units = total_demand;
  p.horizon_days = days;
  p.daily_demand_units = required_daily_rate(total_demand, days);
  p.per_station_throughput = per_station_throughput;
  p.stations_needed = stations_needed(p.daily_demand_units, per_station_throughput);
  p.planned_daily_output = p.stations_needed * per_station_throughput;
  p.planned_total_output = p.planned_daily_output * days;
  p.surplus_units = p.planned_total_output - total_demand;
  return p;
}

std::int64_t plannable_throughput(double measured_units_per_day) {
  if (!std::isfinite(measured_units_per_day) || measured_units_per_day < 0) {
    throw Error(ErrorCode::kValidation, "measured throughput must be a non-negative number");
  }
  return static_cast<std::int64_t>(std::floor(measured_units_per_day));
}

}  // namespace hrc
