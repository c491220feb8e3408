#include "model/precedence.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

namespace hrc {

namespace {

struct IndexedGraph {
  std::vector<std::string> ids;  // sorted ascending
  std::vector<std::vector<std::size_t>> successors;
};

// Returns the dangling verdict, or builds the index on success.
PrecedenceVerdict index_graph(const PrecedenceGraph& graph, IndexedGraph& out) {
  out.ids = graph.task_ids;
  std::sort(out.ids.begin(), out.ids.end());
  out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());

  std::map<std::string, std::size_t, std::less<>> position;
  for (std::size_t i = 0; i < out.ids.size(); ++i) position.emplace(out.ids[i], i);

  out.successors.assign(out.ids.size(), {});
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& edge = graph.edges[e];
    for (const auto* endpoint : {&edge.from, &edge.to}) {
      if (!position.contains(*endpoint)) {
        PrecedenceVerdict v;
        v.status = PrecedenceVerdict::Status::kDanglingEndpoint;
        v.unknown_id = *endpoint;
        v.edge_index = e;
        return v;
      }
    }
    out.successors[position.at(edge.from)].push_back(position.at(edge.to));
  }
  for (auto& succ : out.successors) std::sort(succ.begin(), succ.end());
  return {};
}

// Iterative DFS in ascending id order; returns the first back-edge cycle.
std::vector<std::string> find_cycle(const IndexedGraph& g) {
  enum class Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(g.ids.size(), Color::kWhite);
  std::vector<std::size_t> parent(g.ids.size(), 0);

  for (std::size_t root = 0; root < g.ids.size(); ++root) {
    if (color[root] != Color::kWhite) continue;
    // (node, next successor slot)
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = Color::kGrey;
    while (!stack.empty()) {
      auto& [node, slot] = stack.back();
      if (slot == g.successors[node].size()) {
        color[node] = Color::kBlack;
        stack.pop_back();
        continue;
      }
      const std::size_t next = g.successors[node][slot++];
      if (color[next] == Color::kGrey) {
        std::vector<std::string> cycle{g.ids[next]};
        std::vector<std::string> tail;
        for (std::size_t at = node; at != next; at = parent[at]) tail.push_back(g.ids[at]);
        cycle.insert(cycle.end(), tail.rbegin(), tail.rend());
        cycle.push_back(g.ids[next]);
        return cycle;
      }
      if (color[next] == Color::kWhite) {
        color[next] = Color::kGrey;
        parent[next] = node;
        stack.emplace_back(next, 0);
      }
    }
  }
  return {};
}

}  // namespace

std::string PrecedenceVerdict::message() const {
  switch (status) {
    case Status::kValid:
      return "valid";
    case Status::kDanglingEndpoint:
      return "edge " + std::to_string(edge_index) + " references unknown task '" + unknown_id + "'";
    case Status::kCycle: {
      std::string text = "precedence cycle: ";
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i != 0) text += " -> ";
        text += cycle[i];
      }
      return text;
    }
  }
  return {};
}

PrecedenceVerdict validate_precedence(const PrecedenceGraph& graph) {
  IndexedGraph g;
  if (auto v = index_graph(graph, g); !v.ok()) return v;
  PrecedenceVerdict v;
  v.cycle = find_cycle(g);
  if (!v.cycle.empty()) v.status = PrecedenceVerdict::Status::kCycle;
  return v;
}

std::vector<std::string> topological_order(const PrecedenceGraph& graph) {
  IndexedGraph g;
  if (auto v = index_graph(graph, g); !v.ok()) {
    throw Error(ErrorCode::kValidation, v.message(), "precedence");
  }

  std::vector<std::size_t> indegree(g.ids.size(), 0);
  for (const auto& succ : g.successors) {
    for (auto s : succ) ++indegree[s];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < g.ids.size(); ++i) {
    if (indegree[i] == 0) ready.push(i);
  }

  std::vector<std::string> order;
  order.reserve(g.ids.size());
  while (!ready.empty()) {
    const auto node = ready.top();
    ready.pop();
    order.push_back(g.ids[node]);
    for (auto s : g.successors[node]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (order.size() != g.ids.size()) {
    PrecedenceVerdict v;
    v.status = PrecedenceVerdict::Status::kCycle;
    v.cycle = find_cycle(g);
    throw Error(ErrorCode::kValidation, v.message(), "precedence");
  }
  return order;
}

}  // namespace hrc
