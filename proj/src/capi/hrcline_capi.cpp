#include "hrcline/hrcline.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "des/engine.hpp"
#include "model/scenario_io.hpp"
#include "planner/rampup.hpp"
#include "balance/line_balance.hpp"
#include "report/report.hpp"

struct hrc_scenario {
  hrc::Scenario value;
};

namespace {

thread_local std::string last_error;

hrc_status status_of(hrc::ErrorCode code) {
  switch (code) {
    case hrc::ErrorCode::kParse: return HRC_ERR_PARSE;
    case hrc::ErrorCode::kValidation: return HRC_ERR_VALIDATION;
    case hrc::ErrorCode::kInfeasible: return HRC_ERR_INFEASIBLE;
    case hrc::ErrorCode::kIo: return HRC_ERR_IO;
  }
  return HRC_ERR_INTERNAL;
}

std::string code_name(hrc::ErrorCode code) {
  switch (code) {
    case hrc::ErrorCode::kParse: return "parse";
    case hrc::ErrorCode::kValidation: return "validation";
    case hrc::ErrorCode::kInfeasible: return "infeasible";
    case hrc::ErrorCode::kIo: return "io";
  }
  return "internal";
}

hrc_status fail(hrc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
hrc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return HRC_OK;
  } catch (const hrc::Error& e) {
    return fail(status_of(e.code()), code_name(e.code()) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(HRC_ERR_INTERNAL, "internal: out of memory");
  } catch (const std::exception& e) {
    return fail(HRC_ERR_INTERNAL, std::string("internal: ") + e.what());
  } catch (...) {
    return fail(HRC_ERR_INTERNAL, "internal: unknown error");
  }
}

char* duplicate(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

hrc::ReportOptions convert(const hrc_options* options) {
  hrc::ReportOptions out;
  if (options == nullptr) return out;
  switch (options->format) {
    case HRC_FORMAT_TEXT: out.format = hrc::ReportFormat::kText; break;
    case HRC_FORMAT_JSON: out.format = hrc::ReportFormat::kJson; break;
    case HRC_FORMAT_CSV: out.format = hrc::ReportFormat::kCsv; break;
    default: throw hrc::Error(hrc::ErrorCode::kValidation, "unknown output format");
  }
  switch (options->mode) {
    case HRC_MODE_DEFAULT: break;
    case HRC_MODE_SERIAL: out.mode = hrc::FlowMode::kSerial; break;
    case HRC_MODE_PIPELINED: out.mode = hrc::FlowMode::kPipelined; break;
    default: throw hrc::Error(hrc::ErrorCode::kValidation, "unknown flow mode");
  }
  if (options->has_seed) out.seed = options->seed;
  if (options->replications < 0) throw hrc::Error(hrc::ErrorCode::kValidation, "replications must be positive");
  if (options->replications > 0) out.replications = options->replications;
  if (options->has_min_distance) out.min_distance_m = options->min_distance_m;
  out.threads = options->threads;
  return out;
}

template <typename F>
hrc_status report(const hrc_scenario* scenario, char** out, F&& render) {
  if (out == nullptr) return fail(HRC_ERR_USAGE, "usage: output pointer is null");
  *out = nullptr;
  if (scenario == nullptr) return fail(HRC_ERR_USAGE, "usage: scenario is null");
  return guarded([&] { *out = duplicate(render(scenario->value)); });
}

}  // namespace

extern "C" {

const char* hrc_version(void) { return HRCLINE_VERSION; }

const char* hrc_last_error(void) { return last_error.c_str(); }

const char* hrc_status_name(hrc_status status) {
  switch (status) {
    case HRC_OK: return "ok";
    case HRC_ERR_PARSE: return "invalid";
    case HRC_ERR_INFEASIBLE: return "infeasible";
    case HRC_ERR_IO: return "io";
    case HRC_ERR_USAGE: return "usage";
    case HRC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

hrc_status hrc_scenario_load_file(const char* path, hrc_scenario** out) {
  if (out == nullptr || path == nullptr) return fail(HRC_ERR_USAGE, "usage: null argument");
  *out = nullptr;
  return guarded([&] { *out = new hrc_scenario{hrc::load_scenario_file(path)}; });
}

hrc_status hrc_scenario_load_string(const char* text, size_t length, hrc_scenario** out) {
  if (out == nullptr || (text == nullptr && length > 0)) return fail(HRC_ERR_USAGE, "usage: null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new hrc_scenario{hrc::load_scenario(std::string_view(text == nullptr ? "" : text, length))};
  });
}

hrc_status hrc_scenario_load_bundled(hrc_scenario** out) {
  if (out == nullptr) return fail(HRC_ERR_USAGE, "usage: null argument");
  *out = nullptr;
  return guarded([&] { *out = new hrc_scenario{hrc::bundled_scenario()}; });
}

void hrc_scenario_free(hrc_scenario* scenario) { delete scenario; }

hrc_status hrc_scenario_serialize(const hrc_scenario* scenario, char** out) {
  return report(scenario, out, [](const hrc::Scenario& s) { return hrc::serialize_scenario(s); });
}

hrc_status hrc_report_allocate(const hrc_scenario* scenario, const hrc_options* options, char** out) {
  return report(scenario, out, [&](const hrc::Scenario& s) { return hrc::allocate_report(s, convert(options)); });
}

hrc_status hrc_report_balance(const hrc_scenario* scenario, const hrc_options* options, char** out) {
  return report(scenario, out, [&](const hrc::Scenario& s) { return hrc::balance_report(s, convert(options)); });
}

hrc_status hrc_report_simulate(const hrc_scenario* scenario, const hrc_options* options, char** out) {
  return report(scenario, out, [&](const hrc::Scenario& s) { return hrc::simulate_report(s, convert(options)); });
}

hrc_status hrc_report_check(const hrc_scenario* scenario, const hrc_options* options, char** out) {
  return report(scenario, out, [&](const hrc::Scenario& s) { return hrc::check_report(s, convert(options)); });
}

hrc_status hrc_report_trace(const hrc_scenario* scenario, const hrc_options* options, char** out) {
  return report(scenario, out, [&](const hrc::Scenario& s) { return hrc::trace_report(s, convert(options)); });
}

hrc_status hrc_report_plan(const hrc_scenario* scenario, const hrc_plan_request* request,
                           const hrc_options* options, char** out) {
  if (out == nullptr || request == nullptr) return fail(HRC_ERR_USAGE, "usage: null argument");
  *out = nullptr;
  return guarded([&] {
    hrc::PlanRequest r;
    if (request->has_demand) r.demand = request->demand;
    if (request->has_days) r.days = request->days;
    if (request->has_throughput) r.throughput = request->throughput;
    *out = duplicate(hrc::plan_report(scenario == nullptr ? nullptr : &scenario->value, r, convert(options)));
  });
}

hrc_status hrc_report_demo(const hrc_options* options, char** out) {
  if (out == nullptr) return fail(HRC_ERR_USAGE, "usage: output pointer is null");
  *out = nullptr;
  return guarded([&] { *out = duplicate(hrc::demo_report(convert(options))); });
}

void hrc_string_free(char* text) { std::free(text); }

hrc_status hrc_takt_seconds(int64_t shift_s, int64_t daily_demand, int64_t* out) {
  if (out == nullptr) return fail(HRC_ERR_USAGE, "usage: null argument");
  return guarded([&] {
    if (shift_s <= 0) throw hrc::Error(hrc::ErrorCode::kValidation, "shift must be positive");
    *out = hrc::takt_seconds(shift_s * hrc::kMillisPerSecond, daily_demand);
  });
}

hrc_status hrc_plan_compute(int64_t total_demand, int64_t days, int64_t per_station_throughput, hrc_plan* out) {
  if (out == nullptr) return fail(HRC_ERR_USAGE, "usage: null argument");
  return guarded([&] {
    const auto p = hrc::plan(total_demand, days, per_station_throughput);
    *out = hrc_plan{p.daily_demand_units, p.per_station_throughput, p.stations_needed,
                    p.planned_daily_output, p.planned_total_output};
  });
}

hrc_status hrc_simulate_throughput(const hrc_scenario* scenario, const hrc_options* options, double* mean,
                                   double* half_width) {
  if (scenario == nullptr || mean == nullptr || half_width == nullptr) {
    return fail(HRC_ERR_USAGE, "usage: null argument");
  }
  return guarded([&] {
    const auto o = convert(options);
    const auto& s = scenario->value;
    const auto model = hrc::make_sim_model(s, hrc::SimOverrides{.mode = o.mode, .variability = {}, .days = {}, .stations = {}});
    const auto agg = hrc::replicate(model, o.replications.value_or(s.simulation.replications),
                                    o.seed.value_or(s.simulation.seed), o.threads);
    *mean = agg.mean_daily_throughput;
    *half_width = agg.ci_half_width;
  });
}

}  // extern "C"
