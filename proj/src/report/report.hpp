#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "model/types.hpp"

namespace hrc {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { kText, kJson, kCsv };

std::string_view to_string(ReportFormat f);
std::optional<ReportFormat> parse_report_format(std::string_view text);

struct ReportOptions {
  ReportFormat format = ReportFormat::kText;
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<FlowMode> mode;
  std::optional<double> min_distance_m;
  unsigned threads = 0;
};

struct PlanRequest {
  std::optional<std::int64_t> demand;
  std::optional<std::int64_t> days;
  std::optional<double> throughput;
};

// Each function returns the complete document for one command. JSON output
// has sorted keys and a top-level schema_version. CSV is supported by
// `simulate` (event trace) and `allocate`; other commands throw kValidation.
std::string allocate_report(const Scenario& scenario, const ReportOptions& options);
std::string balance_report(const Scenario& scenario, const ReportOptions& options);
std::string simulate_report(const Scenario& scenario, const ReportOptions& options);
std::string check_report(const Scenario& scenario, const ReportOptions& options);
/// `scenario` may be null when demand, days and throughput are all given.
std::string plan_report(const Scenario* scenario, const PlanRequest& request,
                        const ReportOptions& options);
/// Full pipeline on the bundled scenario.
std::string demo_report(const ReportOptions& options);

/// Event trace CSV of replication 0 under the given overrides.
std::string trace_report(const Scenario& scenario, const ReportOptions& options);

}  // namespace hrc
