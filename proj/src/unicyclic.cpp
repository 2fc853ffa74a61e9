#include "ribbon/unicyclic.hpp"

#include <deque>

namespace ribbon {

UnicyclicReport classify_unicyclic(const RibbonGraph& graph) {
  const int n = graph.num_darts();
  if (n <= 0) throw DomainError("graph must be nonempty");
  for (Dart d = 1; d <= n; ++d) {
    if (graph.iota(d) == d || graph.iota(graph.iota(d)) != d) throw DomainError("iota is not a fixed-point-free involution");
  }
  if (!graph.connected()) throw DomainError("graph is disconnected");
  const auto vertices = graph.sigma_cycles();
  const int rank = n / 2 - static_cast<int>(vertices.size()) + 1;
  if (rank != 1) throw DomainError("expected exactly one cycle; rank is " + std::to_string(rank));

  // Strip leaves until only the cycle remains.
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> alive(static_cast<std::size_t>(n) + 1, false);
  for (const auto& v : vertices) {
    degree[static_cast<std::size_t>(v.front())] = static_cast<int>(v.size());
    alive[static_cast<std::size_t>(v.front())] = true;
  }
  std::deque<Dart> leaves;
  for (const auto& v : vertices) {
    if (v.size() == 1) leaves.push_back(v.front());
  }
  while (!leaves.empty()) {
    const Dart v = leaves.front();
    leaves.pop_front();
    alive[static_cast<std::size_t>(v)] = false;
    for (Dart d : graph.vertex_darts(v)) {
      const Dart w = graph.vertex_of(graph.iota(d));
      if (!alive[static_cast<std::size_t>(w)]) continue;
      if (--degree[static_cast<std::size_t>(w)] == 1) leaves.push_back(w);
    }
  }
  auto on_cycle = [&](Dart d) {
    return alive[static_cast<std::size_t>(graph.vertex_of(d))] &&
           alive[static_cast<std::size_t>(graph.vertex_of(graph.iota(d)))];
  };

  UnicyclicReport report;
  Dart start = 0;
  for (Dart d = 1; d <= n && start == 0; ++d) {
    if (on_cycle(d)) start = d;
  }
  Dart out = start;
  do {
    report.cycle.push_back(out);
    const Dart in = graph.iota(out);
    Dart next = 0;
    for (Dart d : graph.vertex_darts(in)) {
      if (d != in && on_cycle(d)) next = d;
    }
    for (Dart x = graph.sigma(in); x != next; x = graph.sigma(x)) report.right.push_back(x);
    for (Dart x = graph.sigma(next); x != in; x = graph.sigma(x)) report.left.push_back(x);
    out = next;
  } while (out != start);

  report.kind = report.left.empty() || report.right.empty() ? UnicyclicKind::f_infinity_like : UnicyclicKind::chark;
  return report;
}

const char* to_string(UnicyclicKind kind) {
  return kind == UnicyclicKind::chark ? "chark" : "F-infinity-like";
}

}  // namespace ribbon
