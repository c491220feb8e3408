#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace hrc {

enum class Severity { kError, kInfo, kAdvisory };
enum class GuidelineStatus { kPass, kFail, kManualReview };

std::string_view to_string(Severity s);
std::string_view to_string(GuidelineStatus s);

struct Finding {
  std::string rule;                   // e.g. "distance", "interaction", "estop", "overlap"
  Severity severity = Severity::kError;
  std::vector<std::string> subjects;  // actor/buffer ids involved
  std::optional<double> value;        // metres or square metres, rule dependent
  std::string message;
};

struct GuidelineEntry {
  int id = 0;
  std::string title;
  GuidelineStatus status = GuidelineStatus::kManualReview;
  std::string note;
  std::vector<Finding> findings;
};

struct ComplianceReport {
  std::vector<GuidelineEntry> entries;  // always 11, in guideline order

  std::size_t fail_count() const;
};

struct ComplianceOptions {
  double min_distance_m = 2.0;
  double overlap_threshold_m2 = 0.0;
};

inline constexpr int kGuidelineCount = 11;

/// One finding per pair of humans closer than `min_distance_m` (strictly).
std::vector<Finding> check_distance(const Layout& layout, double min_distance_m = 2.0);

/// Direct human-to-human handoffs are violations. A glove advisory is added
/// when work can still travel from a human to a human through robots or
/// buffers.
std::vector<Finding> check_interaction(const Layout& layout);

/// One finding per human with no emergency stop inside their arm reach.
std::vector<Finding> check_estop(const Layout& layout);

/// Informational findings for every human/robot pair whose workspace discs
/// overlap by more than `threshold_m2`.
std::vector<Finding> check_overlap(const Layout& layout, double threshold_m2 = 0.0);

ComplianceReport lint(const Layout& layout, const ComplianceOptions& options = {});
/// Lints the scenario's layout; throws kValidation when it has none.
ComplianceReport lint(const Scenario& scenario, const ComplianceOptions& options = {});

}  // namespace hrc
