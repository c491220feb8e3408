#pragma once

#include <span>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace hrc {

enum class ResourceClass { kRobotEligible, kHumanRequired };

std::string_view to_string(ResourceClass c);

/// A task goes to the robot only when every attribute is rated 1.
ResourceClass rate_task(const AttributeRating& attrs) noexcept;

/// Symbols of the attributes rated 0, in S, F, M, J, Sf order.
std::vector<std::string> failed_attributes(const AttributeRating& attrs);

struct TaskRationale {
  std::string task_id;
  std::vector<std::string> failed;  // empty iff robot-eligible
};

struct AllocationResult {
  std::vector<std::string> robot_tasks;
  std::vector<std::string> human_tasks;
  std::vector<TaskRationale> rationale;  // one entry per input task, input order

  ResourceClass class_of(std::string_view task_id) const;
};

AllocationResult allocate_tasks(std::span<const Task> tasks);

}  // namespace hrc
