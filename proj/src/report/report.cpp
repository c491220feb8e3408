#include "report/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "allocation/allocation.hpp"
#include "balance/line_balance.hpp"
#include "compliance/compliance.hpp"
#include "des/engine.hpp"
#include "model/scenario_io.hpp"
#include "planner/rampup.hpp"

namespace hrc {

using nlohmann::json;

std::string_view to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::kText: return "text";
    case ReportFormat::kJson: return "json";
    case ReportFormat::kCsv: return "csv";
  }
  return "text";
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "text") return ReportFormat::kText;
  if (text == "json") return ReportFormat::kJson;
  if (text == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

namespace {

// Seconds as an integer when whole, otherwise with millisecond precision.
std::string secs(Millis ms) {
  if (ms % kMillisPerSecond == 0) return std::to_string(ms / kMillisPerSecond);
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms_to_seconds(ms);
  return out.str();
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

std::string document(json body, std::string_view command) {
  body["schema_version"] = kReportSchemaVersion;
  body["command"] = command;
  return body.dump(2) + "\n";
}

[[noreturn]] void unsupported(std::string_view command, const ReportOptions& options) {
  throw Error(ErrorCode::kValidation, "format '" + std::string(to_string(options.format)) +
                                          "' is not supported by '" + std::string(command) + "'");
}

// ---- allocation -----------------------------------------------------------

json allocation_json(const Scenario& s, const AllocationResult& a) {
  json tasks = json::array();
  for (const auto& r : a.rationale) {
    const auto* task = s.find_task(r.task_id);
    tasks.push_back({{"id", r.task_id},
                     {"name", task != nullptr ? task->name : r.task_id},
                     {"class", to_string(r.failed.empty() ? ResourceClass::kRobotEligible
                                                          : ResourceClass::kHumanRequired)},
                     {"failed_attributes", r.failed}});
  }
  return {{"robot_tasks", a.robot_tasks}, {"human_tasks", a.human_tasks}, {"tasks", tasks}};
}

// ---- balance --------------------------------------------------------------

json stage_json(const Stage& st) {
  return {{"resource", st.resource},
          {"placement", to_string(st.placement)},
          {"tasks", st.tasks},
          {"work_s", ms_to_seconds(st.work_ms)},
          {"ct_s", ms_to_seconds(st.ct_ms)},
          {"pt_s", ms_to_seconds(st.pt_ms)}};
}

json bottleneck_json(const std::optional<Bottleneck>& b) {
  if (!b) return nullptr;
  return {{"stage_index", b->stage_index}, {"resource", b->resource}, {"pt_s", ms_to_seconds(b->pt_ms)}};
}

struct BalanceFigures {
  StationConfig config;
  std::vector<std::string> warnings;
  std::int64_t daily_demand = 0;
  std::optional<std::int64_t> takt_s;
  AnalyticThroughput serial;
  AnalyticThroughput pipelined;
};

BalanceFigures balance_figures(const Scenario& s) {
  BalanceFigures f;
  f.config = station_config_for(s);
  f.warnings = timing_warnings(f.config, s.resources);
  f.daily_demand = required_daily_rate(s.demand_units, s.horizon_days);
  if (f.daily_demand > 0) f.takt_s = takt_seconds(s.shift_ms, f.daily_demand);
  f.serial = analytic_throughput(f.config, s.resources, s.shift_ms, FlowMode::kSerial);
  f.pipelined = analytic_throughput(f.config, s.resources, s.shift_ms, FlowMode::kPipelined);
  return f;
}

json idle_json(const StationConfig& config, FlowMode mode) {
  json out = json::array();
  for (const auto& e : idle_report(config, mode)) {
    out.push_back({{"resource", e.resource}, {"idle_s", ms_to_seconds(e.idle_ms)}});
  }
  return out;
}

json balance_json(const BalanceFigures& f) {
  json on_table = json::array();
  for (const auto& st : f.config.on_table) on_table.push_back(stage_json(st));
  json offline = json::array();
  for (const auto& st : f.config.offline) offline.push_back(stage_json(st));
  auto throughput = [&](const AnalyticThroughput& t, FlowMode mode) {
    return json{{"units_per_day", t.units_per_day},
                {"bottleneck", bottleneck_json(t.bottleneck)},
                {"idle", idle_json(f.config, mode)}};
  };
  return {{"stages", {{"on_table", on_table}, {"offline", offline}}},
          {"rotary_positions", f.config.rotary_positions},
          {"unit_cycle_time_s", ms_to_seconds(unit_cycle_time(f.config))},
          {"unit_process_time_s", ms_to_seconds(unit_process_time(f.config))},
          {"daily_demand", f.daily_demand},
          {"takt_s", f.takt_s ? json(*f.takt_s) : json(nullptr)},
          {"analytic",
           {{"serial", throughput(f.serial, FlowMode::kSerial)},
            {"pipelined", throughput(f.pipelined, FlowMode::kPipelined)}}},
          {"warnings", f.warnings}};
}

void balance_text(std::ostream& out, const BalanceFigures& f) {
  out << "stages:\n";
  for (const auto* st : f.config.all_stages()) {
    out << "  " << st->resource << " [" << to_string(st->placement) << "] ct " << secs(st->ct_ms)
        << " s, pt " << secs(st->pt_ms) << " s, tasks";
    for (const auto& t : st->tasks) out << ' ' << t;
    out << '\n';
  }
  out << "rotary positions: " << f.config.rotary_positions << '\n';
  out << "unit cycle time: " << secs(unit_cycle_time(f.config)) << " s\n";
  out << "unit process time: " << secs(unit_process_time(f.config)) << " s\n";
  out << "daily demand: " << f.daily_demand << " units/day\n";
  out << "takt: " << (f.takt_s ? std::to_string(*f.takt_s) + " s" : std::string("n/a")) << '\n';
  for (const auto& [mode, t] : {std::pair{FlowMode::kSerial, &f.serial}, std::pair{FlowMode::kPipelined, &f.pipelined}}) {
    out << "analytic throughput (" << to_string(mode) << "): " << t->units_per_day << " units/day";
    if (t->bottleneck) out << ", bottleneck " << t->bottleneck->resource;
    out << '\n';
    out << "idle per " << (mode == FlowMode::kSerial ? "unit" : "table interval") << " (" << to_string(mode) << "):";
    for (const auto& e : idle_report(f.config, mode)) out << ' ' << e.resource << ' ' << secs(e.idle_ms) << " s;";
    out << '\n';
  }
  for (const auto& w : f.warnings) out << "warning: " << w << '\n';
}

// ---- simulation -----------------------------------------------------------

struct SimulationRun {
  SimModel model;
  int replications = 1;
  std::uint64_t seed = 0;
  AggregateResult aggregate;
};

SimulationRun simulate(const Scenario& s, const ReportOptions& options) {
  SimulationRun run;
  run.model = make_sim_model(s, SimOverrides{.mode = options.mode, .variability = {}, .days = {}, .stations = {}});
  run.replications = options.replications.value_or(s.simulation.replications);
  run.seed = options.seed.value_or(s.simulation.seed);
  run.aggregate = replicate(run.model, run.replications, run.seed, options.threads);
  return run;
}

json simulation_json(const SimulationRun& run) {
  const auto& agg = run.aggregate;
  json utilization = json::object();
  for (std::size_t i = 0; i < agg.resource_ids.size(); ++i) {
    utilization[agg.resource_ids[i]] = agg.mean_utilization[i];
  }
  json per_rep = json::array();
  for (std::size_t i = 0; i < agg.replications.size(); ++i) {
    const auto& r = agg.replications[i];
    per_rep.push_back({{"index", i},
                       {"seed", agg.seeds[i]},
                       {"completed", r.completed},
                       {"started", r.started},
                       {"wip", r.wip},
                       {"daily_completed", r.daily_completed}});
  }
  return {{"mode", to_string(run.model.mode)},
          {"variability", to_string(run.model.variability)},
          {"days", run.model.days},
          {"stations", run.model.stations},
          {"replications", run.replications},
          {"seed", run.seed},
          {"mean_daily_throughput", agg.mean_daily_throughput},
          {"ci95_half_width", agg.ci_half_width},
          {"mean_wip", agg.mean_wip},
          {"utilization", utilization},
          {"per_replication", per_rep}};
}

void simulation_text(std::ostream& out, const SimulationRun& run) {
  const auto& agg = run.aggregate;
  out << "simulation: " << to_string(run.model.mode) << ", " << to_string(run.model.variability) << ", "
      << run.model.stations << " station(s), " << run.model.days << " day(s), " << run.replications
      << " replication(s), seed " << run.seed << '\n';
  out << "mean daily throughput: " << fixed(agg.mean_daily_throughput, 2) << " +/- "
      << fixed(agg.ci_half_width, 2) << " units/day (95% CI)\n";
  out << "mean end-of-horizon WIP: " << fixed(agg.mean_wip, 2) << " units\n";
  out << "utilization:";
  for (std::size_t i = 0; i < agg.resource_ids.size(); ++i) {
    out << ' ' << agg.resource_ids[i] << ' ' << fixed(100.0 * agg.mean_utilization[i], 1) << "%;";
  }
  out << '\n';
}

// ---- plan -----------------------------------------------------------------

json plan_json(const RampUpPlan& p) {
  return {{"total_demand", p.total_demand_units},
          {"days", p.horizon_days},
          {"daily_demand", p.daily_demand_units},
          {"per_station_throughput", p.per_station_throughput},
          {"stations", p.stations_needed},
          {"planned_daily_output", p.planned_daily_output},
          {"total", p.planned_total_output},
          {"surplus", p.surplus_units}};
}

void plan_text(std::ostream& out, const RampUpPlan& p) {
  out << "required daily rate: " << p.daily_demand_units << " units/day\n";
  out << "per-station throughput: " << p.per_station_throughput << " units/day\n";
  out << "stations: " << p.stations_needed << '\n';
  out << "planned daily output: " << p.planned_daily_output << " units/day\n";
  out << "planned total: " << p.planned_total_output << " units in " << p.horizon_days << " days\n";
  out << "surplus: " << p.surplus_units << " units\n";
}

// ---- compliance -----------------------------------------------------------

json compliance_json(const ComplianceReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json findings = json::array();
    for (const auto& f : e.findings) {
      findings.push_back({{"rule", f.rule},
                          {"severity", to_string(f.severity)},
                          {"subjects", f.subjects},
                          {"value", f.value ? json(*f.value) : json(nullptr)},
                          {"message", f.message}});
    }
    entries.push_back({{"id", e.id},
                       {"title", e.title},
                       {"status", to_string(e.status)},
                       {"note", e.note},
                       {"findings", findings}});
  }
  return {{"guidelines", entries}, {"fail_count", report.fail_count()}};
}

void compliance_text(std::ostream& out, const ComplianceReport& report) {
  for (const auto& e : report.entries) {
    out << std::setw(2) << e.id << ". " << e.title << ": " << to_string(e.status) << '\n';
    for (const auto& f : e.findings) out << "      [" << to_string(f.severity) << "] " << f.message << '\n';
  }
  out << "failed guidelines: " << report.fail_count() << '\n';
}

ComplianceOptions compliance_options(const ReportOptions& options) {
  ComplianceOptions c;
  if (options.min_distance_m) {
    if (!(*options.min_distance_m > 0)) throw Error(ErrorCode::kValidation, "minimum distance must be positive");
    c.min_distance_m = *options.min_distance_m;
  }
  return c;
}

}  // namespace

std::string allocate_report(const Scenario& scenario, const ReportOptions& options) {
  const auto allocation = allocate_tasks(scenario.tasks);
  switch (options.format) {
    case ReportFormat::kJson:
      return document(allocation_json(scenario, allocation), "allocate");
    case ReportFormat::kCsv: {
      std::ostringstream out;
      out << "task,class,failed_attributes\n";
      for (const auto& r : allocation.rationale) {
        out << r.task_id << ',' << (r.failed.empty() ? "robot" : "human") << ',';
        for (std::size_t i = 0; i < r.failed.size(); ++i) out << (i ? " " : "") << r.failed[i];
        out << '\n';
      }
      return out.str();
    }
    case ReportFormat::kText: {
      std::ostringstream out;
      out << "robot tasks (" << allocation.robot_tasks.size() << "):";
      for (const auto& t : allocation.robot_tasks) out << ' ' << t;
      out << "\nhuman tasks (" << allocation.human_tasks.size() << "):";
      for (const auto& t : allocation.human_tasks) out << ' ' << t;
      out << '\n';
      for (const auto& r : allocation.rationale) {
        if (r.failed.empty()) continue;
        out << "  " << r.task_id << ": robot cannot handle";
        for (const auto& a : r.failed) out << ' ' << a;
        out << '\n';
      }
      return out.str();
    }
  }
  return {};
}

std::string balance_report(const Scenario& scenario, const ReportOptions& options) {
  const auto figures = balance_figures(scenario);
  if (options.format == ReportFormat::kCsv) unsupported("balance", options);
  if (options.format == ReportFormat::kJson) return document(balance_json(figures), "balance");
  std::ostringstream out;
  balance_text(out, figures);
  return out.str();
}

std::string simulate_report(const Scenario& scenario, const ReportOptions& options) {
  if (options.format == ReportFormat::kCsv) return trace_report(scenario, options);
  const auto run = simulate(scenario, options);
  if (options.format == ReportFormat::kJson) return document(simulation_json(run), "simulate");
  std::ostringstream out;
  simulation_text(out, run);
  return out.str();
}

std::string trace_report(const Scenario& scenario, const ReportOptions& options) {
  const auto model = make_sim_model(scenario, SimOverrides{.mode = options.mode, .variability = {}, .days = {}, .stations = {}});
  const auto seed = replication_seed(options.seed.value_or(scenario.simulation.seed), 0);
  return trace_csv(event_trace(model, seed));
}

std::string check_report(const Scenario& scenario, const ReportOptions& options) {
  if (options.format == ReportFormat::kCsv) unsupported("check", options);
  const auto report = lint(scenario, compliance_options(options));
  if (options.format == ReportFormat::kJson) return document(compliance_json(report), "check");
  std::ostringstream out;
  compliance_text(out, report);
  return out.str();
}

std::string plan_report(const Scenario* scenario, const PlanRequest& request,
                        const ReportOptions& options) {
  if (options.format == ReportFormat::kCsv) unsupported("plan", options);
  auto need = [&](const char* what) {
    throw Error(ErrorCode::kValidation, std::string("plan needs --") + what + " or a scenario");
  };
  if (scenario == nullptr && !request.demand) need("demand");
  if (scenario == nullptr && !request.days) need("days");
  if (scenario == nullptr && !request.throughput) need("throughput");

  const auto demand = request.demand.value_or(scenario != nullptr ? scenario->demand_units : 0);
  const auto days = request.days.value_or(scenario != nullptr ? scenario->horizon_days : 0);
  std::string source = "supplied";
  double measured = 0.0;
  if (request.throughput) {
    measured = *request.throughput;
  } else if (scenario->per_station_throughput) {
    measured = *scenario->per_station_throughput;
    source = "scenario";
  } else {
    measured = simulate(*scenario, options).aggregate.mean_daily_throughput;
    source = "simulation";
  }
  const auto p = plan(demand, days, plannable_throughput(measured));

  if (options.format == ReportFormat::kJson) {
    auto body = plan_json(p);
    body["throughput_source"] = source;
    return document(body, "plan");
  }
  std::ostringstream out;
  out << "throughput source: " << source << '\n';
  plan_text(out, p);
  return out.str();
}

std::string demo_report(const ReportOptions& options) {
  const auto scenario = bundled_scenario();
  const auto allocation = allocate_tasks(scenario.tasks);
  const auto figures = balance_figures(scenario);
  const auto run = simulate(scenario, options);
  const auto reference_throughput = plannable_throughput(scenario.per_station_throughput.value_or(0.0));
  const auto reference_plan = plan(scenario.demand_units, scenario.horizon_days, reference_throughput);
  const auto measured_throughput = plannable_throughput(run.aggregate.mean_daily_throughput);
  std::optional<RampUpPlan> measured_plan;
  if (measured_throughput > 0) measured_plan = plan(scenario.demand_units, scenario.horizon_days, measured_throughput);
  const auto compliance = lint(scenario, compliance_options(options));

  if (options.format == ReportFormat::kCsv) unsupported("demo", options);
  if (options.format == ReportFormat::kJson) {
    json body{{"scenario", scenario.name},
              {"allocation", allocation_json(scenario, allocation)},
              {"balance", balance_json(figures)},
              {"simulation", simulation_json(run)},
              {"plan", plan_json(reference_plan)},
              {"plan_from_simulation", measured_plan ? plan_json(*measured_plan) : json(nullptr)},
              {"compliance", compliance_json(compliance)}};
    return document(body, "demo");
  }

  std::ostringstream out;
  out << "== " << scenario.name << " ==\n";
  out << "tasks: " << scenario.tasks.size() << " (" << allocation.robot_tasks.size() << " robot, "
      << allocation.human_tasks.size() << " human)\n";
  out << "unit cycle time: " << secs(unit_cycle_time(figures.config)) << " s\n";
  out << "unit process time: " << secs(unit_process_time(figures.config)) << " s\n";
  out << "shift: " << secs(scenario.shift_ms) << " s\n";
  out << "takt: " << (figures.takt_s ? std::to_string(*figures.takt_s) + " s" : std::string("n/a")) << '\n';
  out << "analytic throughput: serial " << figures.serial.units_per_day << ", pipelined "
      << figures.pipelined.units_per_day << " units/day\n";
  simulation_text(out, run);
  out << "-- ramp-up plan (reference throughput " << reference_throughput << " units/day) --\n";
  plan_text(out, reference_plan);
  if (measured_plan) {
    out << "-- ramp-up plan (simulated throughput " << measured_throughput << " units/day) --\n";
    plan_text(out, *measured_plan);
  }
  out << "-- layout compliance --\n";
  compliance_text(out, compliance);
  return out.str();
}

}  // namespace hrc
