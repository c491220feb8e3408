#include "compliance/compliance.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "compliance/geometry.hpp"

namespace hrc {

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kInfo: return "info";
    case Severity::kAdvisory: return "advisory";
  }
  return "error";
}

std::string_view to_string(GuidelineStatus s) {
  switch (s) {
    case GuidelineStatus::kPass: return "pass";
    case GuidelineStatus::kFail: return "fail";
    case GuidelineStatus::kManualReview: return "manual_review";
  }
  return "manual_review";
}

std::size_t ComplianceReport::fail_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) {
    return e.status == GuidelineStatus::kFail;
  }));
}

namespace {

std::string format_metres(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << v;
  return out.str();
}

std::vector<const Actor*> actors_of(const Layout& layout, ResourceKind kind) {
  std::vector<const Actor*> out;
  for (const auto& a : layout.actors) {
    if (a.kind == kind) out.push_back(&a);
  }
  return out;
}

struct GuidelineText {
  std::string_view title;
  std::string_view note;
};

constexpr std::array<GuidelineText, kGuidelineCount> kGuidelines{{
    {"Modular fixtures", "Confirm fixtures and tables can be remounted without rework."},
    {"Compact cell", "Confirm the cell footprint avoids needless robot and operator travel."},
    {"Logical flow", "Confirm a sequential product flow with minimal work in process."},
    {"Ergonomics", "Confirm operators reach targets without bending or stretching."},
    {"Cobot visibility", "Confirm robot motion stays in the operator's field of view."},
    {"Emergency stop within reach", "Every operator has an emergency stop inside arm reach."},
    {"Enabling device", "Confirm an enabling device is available for each robot task."},
    {"Workspace overlap", "Overlap between operator and robot workspaces, to be minimised."},
    {"Social distancing", "Operators keep the minimum distance and hand work over via robots or buffers."},
    {"Digital twin", "Confirm the cell is validated in simulation and the model is maintained."},
    {"Simple design", "Confirm the design stays simple to build and reconfigure."},
}};

}  // namespace

std::vector<Finding> check_distance(const Layout& layout, double min_distance_m) {
  std::vector<Finding> out;
  const auto humans = actors_of(layout, ResourceKind::kHuman);
  for (std::size_t i = 0; i < humans.size(); ++i) {
    for (std::size_t j = i + 1; j < humans.size(); ++j) {
      const double d = distance(humans[i]->position, humans[j]->position);
      if (d < min_distance_m) {
        out.push_back({"distance", Severity::kError, {humans[i]->id, humans[j]->id}, d,
                       humans[i]->id + " and " + humans[j]->id + " are " + format_metres(d) +
                           " m apart (minimum " + format_metres(min_distance_m) + " m)"});
      }
    }
  }
  return out;
}

std::vector<Finding> check_interaction(const Layout& layout) {
  std::vector<Finding> out;
  auto is_human = [&](const std::string& id) {
    const auto* a = layout.find_actor(id);
    return a != nullptr && a->kind == ResourceKind::kHuman;
  };

  std::map<std::string, std::vector<std::string>, std::less<>> successors;
  for (const auto& h : layout.handoffs) {
    successors[h.from].push_back(h.to);
    if (is_human(h.from) && is_human(h.to)) {
      out.push_back({"interaction", Severity::kError, {h.from, h.to}, std::nullopt,
                     "direct handoff from " + h.from + " to " + h.to});
    }
  }

  // Any human reaching a human through at least one robot or buffer.
  std::vector<std::string> path;
  for (const auto* human : actors_of(layout, ResourceKind::kHuman)) {
    std::set<std::string, std::less<>> seen;
    std::vector<std::string> frontier;
    for (const auto& next : successors[human->id]) {
      if (!is_human(next) && seen.insert(next).second) frontier.push_back(next);
    }
    while (!frontier.empty() && path.empty()) {
      const auto node = frontier.back();
      frontier.pop_back();
      for (const auto& next : successors[node]) {
        if (is_human(next)) {
          if (next == human->id) continue;
          path = {human->id, node, next};
          break;
        }
        if (seen.insert(next).second) frontier.push_back(next);
      }
    }
    if (!path.empty()) break;
  }
  if (!path.empty()) {
    out.push_back({"gloves", Severity::kAdvisory, path, std::nullopt,
                   "work in process can pass from " + path.front() + " to " + path.back() +
                       " via shared surfaces; all operators should wear gloves"});
  }
  return out;
}

std::vector<Finding> check_estop(const Layout& layout) {
  std::vector<Finding> out;
  for (const auto* human : actors_of(layout, ResourceKind::kHuman)) {
    const bool covered = std::any_of(layout.estops.begin(), layout.estops.end(), [&](const Point& p) {
      return distance(human->position, p) <= human->arm_reach_m;
    });
    if (!covered) {
      out.push_back({"estop", Severity::kError, {human->id}, human->arm_reach_m,
                     "no emergency stop within " + format_metres(human->arm_reach_m) + " m of " +
                         human->id});
    }
  }
  return out;
}

std::vector<Finding> check_overlap(const Layout& layout, double threshold_m2) {
  std::vector<Finding> out;
  for (const auto* human : actors_of(layout, ResourceKind::kHuman)) {
    for (const auto* robot : actors_of(layout, ResourceKind::kRobot)) {
      const double area =
          overlap_area(human->position, human->arm_reach_m, robot->position, robot->reach_m);
      if (area > threshold_m2) {
        out.push_back({"overlap", Severity::kInfo, {human->id, robot->id}, area,
                       human->id + " workspace overlaps " + robot->id + " envelope by " +
                           format_metres(area) + " m^2"});
      }
    }
  }
  return out;
}

ComplianceReport lint(const Layout& layout, const ComplianceOptions& options) {
  ComplianceReport report;
  for (int id = 1; id <= kGuidelineCount; ++id) {
    const auto& text = kGuidelines[static_cast<std::size_t>(id - 1)];
    GuidelineEntry entry{id, std::string(text.title), GuidelineStatus::kManualReview,
                         std::string(text.note), {}};
    switch (id) {
      case 6:
        entry.findings = check_estop(layout);
        entry.status = entry.findings.empty() ? GuidelineStatus::kPass : GuidelineStatus::kFail;
        break;
      case 8:
        entry.findings = check_overlap(layout, options.overlap_threshold_m2);
        entry.status = GuidelineStatus::kPass;
        break;
      case 9: {
        entry.findings = check_distance(layout, options.min_distance_m);
        auto interaction = check_interaction(layout);
        entry.findings.insert(entry.findings.end(), interaction.begin(), interaction.end());
        const bool failed = std::any_of(entry.findings.begin(), entry.findings.end(),
                                        [](const auto& f) { return f.severity == Severity::kError; });
        entry.status = failed ? GuidelineStatus::kFail : GuidelineStatus::kPass;
        break;
      }
      default:
        break;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

ComplianceReport lint(const Scenario& scenario, const ComplianceOptions& options) {
  if (!scenario.layout) throw Error(ErrorCode::kValidation, "scenario has no layout", "layout");
  return lint(*scenario.layout, options);
}

}  // namespace hrc
