#pragma once

#include <vector>

#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

enum class UnicyclicKind { chark, f_infinity_like };

struct UnicyclicReport {
  UnicyclicKind kind = UnicyclicKind::f_infinity_like;
  /// Outgoing darts of the cycle, in travel order.
  std::vector<Dart> cycle;
  /// Branch darts on the left and on the right of the direction of travel.
  std::vector<Dart> left;
  std::vector<Dart> right;
};

/// Accepts a connected graph with exactly one cycle; vertices of any degree
/// are allowed so that truncated branches can end in leaves.
UnicyclicReport classify_unicyclic(const RibbonGraph& graph);

const char* to_string(UnicyclicKind kind);

}  // namespace ribbon
