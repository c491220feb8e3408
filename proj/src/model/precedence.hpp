#pragma once

#include <string>
#include <vector>

#include "model/types.hpp"

namespace hrc {

struct PrecedenceVerdict {
  enum class Status { kValid, kCycle, kDanglingEndpoint };

  Status status = Status::kValid;
  /// For kCycle: a closed walk whose first and last ids coincide.
  std::vector<std::string> cycle;
  /// For kDanglingEndpoint: the unknown id and the offending edge index.
  std::string unknown_id;
  std::size_t edge_index = 0;

  bool ok() const noexcept { return status == Status::kValid; }
  std::string message() const;
};

/// Succeeds iff the graph is a DAG whose edges only mention known ids.
PrecedenceVerdict validate_precedence(const PrecedenceGraph& graph);

/// Kahn's algorithm with ascending-id tie breaking. Throws kValidation on a
/// cycle or dangling endpoint.
std::vector<std::string> topological_order(const PrecedenceGraph& graph);

}  // namespace hrc
