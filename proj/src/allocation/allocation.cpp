#include "allocation/allocation.hpp"

#include <algorithm>

namespace hrc {

std::string_view to_string(ResourceClass c) {
  return c == ResourceClass::kRobotEligible ? "robot" : "human";
}

ResourceClass rate_task(const AttributeRating& a) noexcept {
  return a.shape && a.feeding && a.mounting && a.joining && a.safety ? ResourceClass::kRobotEligible
                                                                      : ResourceClass::kHumanRequired;
}

std::vector<std::string> failed_attributes(const AttributeRating& attrs) {
  std::vector<std::string> out;
  const unsigned bits = attrs.bits();
  for (unsigned i = 0; i < AttributeRating::kCount; ++i) {
    if ((bits & (1u << i)) == 0) out.emplace_back(kAttributeSymbols[i]);
  }
  return out;
}

ResourceClass AllocationResult::class_of(std::string_view task_id) const {
  const bool robot = std::find(robot_tasks.begin(), robot_tasks.end(), task_id) != robot_tasks.end();
  if (robot) return ResourceClass::kRobotEligible;
  if (std::find(human_tasks.begin(), human_tasks.end(), task_id) != human_tasks.end()) {
    return ResourceClass::kHumanRequired;
  }
  throw Error(ErrorCode::kValidation, "task '" + std::string(task_id) + "' was not allocated");
}

AllocationResult allocate_tasks(std::span<const Task> tasks) {
  AllocationResult result;
  for (const auto& t : tasks) {
    if (rate_task(t.attributes) == ResourceClass::kRobotEligible) {
      result.robot_tasks.push_back(t.id);
    } else {
      result.human_tasks.push_back(t.id);
    }
    result.rationale.push_back({t.id, failed_attributes(t.attributes)});
  }
  return result;
}

}  // namespace hrc
