#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hrcline/hrcline.h"

namespace {

constexpr int kExitUsage = 2;

struct Scenario {
  hrc_scenario* handle = nullptr;
  ~Scenario() { hrc_scenario_free(handle); }
};

struct Owned {
  char* text = nullptr;
  ~Owned() { hrc_string_free(text); }
};

int report_error(hrc_status status) {
  std::string message = hrc_last_error();
  if (message.empty()) message = std::string(hrc_status_name(status)) + ": failed";
  for (auto& c : message) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::cerr << "hrcline: error: " << message << '\n';
  return static_cast<int>(status);
}

int usage_error(const std::string& message) {
  std::cerr << "hrcline: error: usage: " << message << '\n';
  return kExitUsage;
}

int emit(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return std::cout ? 0 : static_cast<int>(HRC_ERR_IO);
  }
  std::ofstream file(out_path, std::ios::binary);
  if (file) file << text;
  if (!file) {
    std::cerr << "hrcline: error: io: cannot write " << out_path << '\n';
    return static_cast<int>(HRC_ERR_IO);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Human-robot collaborative assembly line designer"};
  app.set_version_flag("--version", std::string(hrc_version()));
  app.require_subcommand(1);

  std::string format_name = "text";
  std::string out_path;
  std::string mode_name;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<double> min_distance;
  unsigned threads = 0;
  std::string scenario_path;
  std::string trace_path;
  std::optional<std::int64_t> demand;
  std::optional<std::int64_t> days;
  std::optional<double> throughput;

  const std::map<std::string, hrc_format> formats{
      {"text", HRC_FORMAT_TEXT}, {"json", HRC_FORMAT_JSON}, {"csv", HRC_FORMAT_CSV}};
  const std::map<std::string, hrc_mode> modes{{"serial", HRC_MODE_SERIAL}, {"pipelined", HRC_MODE_PIPELINED}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", out_path, "Write the report to a file instead of stdout");
  };
  auto simulation = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Base random seed");
    sub->add_option("--reps", reps, "Number of replications")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode_name, "Flow mode")->check(CLI::IsMember({"serial", "pipelined"}));
    sub->add_option("--threads", threads, "Worker threads for replications (0: all cores)");
  };
  auto scenario_arg = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("scenario", scenario_path, "Scenario file");
    if (required) opt->required();
  };

  auto* allocate = app.add_subcommand("allocate", "Partition tasks between robots and humans");
  scenario_arg(allocate, true);
  common(allocate);

  auto* balance = app.add_subcommand("balance", "Stages, cycle time, takt and analytic throughput");
  scenario_arg(balance, true);
  common(balance);
  balance->add_option("--mode", mode_name, "Accepted for symmetry; both modes are reported")
      ->check(CLI::IsMember({"serial", "pipelined"}));

  auto* simulate = app.add_subcommand("simulate", "Run discrete-event replications");
  scenario_arg(simulate, true);
  common(simulate);
  simulation(simulate);
  simulate->add_option("--trace", trace_path, "Also write the event trace CSV of replication 0");

  auto* plan = app.add_subcommand("plan", "Size the number of stations for a demand");
  scenario_arg(plan, false);
  common(plan);
  simulation(plan);
  plan->add_option("--demand", demand, "Total demand in units")->check(CLI::NonNegativeNumber);
  plan->add_option("--days", days, "Horizon in days")->check(CLI::PositiveNumber);
  plan->add_option("--throughput", throughput, "Units per station per day");

  auto* check = app.add_subcommand("check", "Lint the layout against the design guidelines");
  scenario_arg(check, true);
  common(check);
  check->add_option("--min-distance", min_distance, "Minimum operator distance in metres");

  auto* demo = app.add_subcommand("demo", "Full pipeline on the bundled reference scenario");
  common(demo);
  simulation(demo);
  demo->add_option("--min-distance", min_distance, "Minimum operator distance in metres");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    for (auto& c : message) {
      if (c == '\n') c = ' ';
    }
    return usage_error(message);
  }

  hrc_options options{};
  options.format = formats.at(format_name);
  options.mode = mode_name.empty() ? HRC_MODE_DEFAULT : modes.at(mode_name);
  if (seed) {
    options.has_seed = 1;
    options.seed = *seed;
  }
  options.replications = reps.value_or(0);
  if (min_distance) {
    options.has_min_distance = 1;
    options.min_distance_m = *min_distance;
  }
  options.threads = threads;

  Scenario scenario;
  if (!scenario_path.empty()) {
    const auto status = hrc_scenario_load_file(scenario_path.c_str(), &scenario.handle);
    if (status != HRC_OK) return report_error(status);
  }

  Owned out;
  hrc_status status = HRC_OK;
  if (allocate->parsed()) {
    status = hrc_report_allocate(scenario.handle, &options, &out.text);
  } else if (balance->parsed()) {
    status = hrc_report_balance(scenario.handle, &options, &out.text);
  } else if (simulate->parsed()) {
    status = hrc_report_simulate(scenario.handle, &options, &out.text);
    if (status == HRC_OK && !trace_path.empty()) {
      Owned trace;
      const auto trace_status = hrc_report_trace(scenario.handle, &options, &trace.text);
      if (trace_status != HRC_OK) return report_error(trace_status);
      if (const int rc = emit(trace.text, trace_path); rc != 0) return rc;
    }
  } else if (check->parsed()) {
    status = hrc_report_check(scenario.handle, &options, &out.text);
  } else if (plan->parsed()) {
    hrc_plan_request request{};
    request.has_demand = demand ? 1 : 0;
    request.demand = demand.value_or(0);
    request.has_days = days ? 1 : 0;
    request.days = days.value_or(0);
    request.has_throughput = throughput ? 1 : 0;
    request.throughput = throughput.value_or(0.0);
    status = hrc_report_plan(scenario.handle, &request, &options, &out.text);
  } else if (demo->parsed()) {
    status = hrc_report_demo(&options, &out.text);
  }
  if (status != HRC_OK) return report_error(status);
  return emit(out.text, out_path);
}
