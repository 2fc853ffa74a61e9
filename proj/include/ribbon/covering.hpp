#pragma once

#include <string>

#include "ribbon/groupoid.hpp"
#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

struct CoveringCheck {
  bool covering = false;
  int degree = 0;
  /// Why the map fails to be a covering; empty when it is one.
  std::string reason;
};

/// psi[h] is the base dart under cover dart h. A covering commutes with sigma
/// and iota and is onto; the degree is the common fibre size.
CoveringCheck is_covering(const DartMap& psi, const RibbonGraph& cover, const RibbonGraph& base);

/// Unique lift of `word` starting on the edge of `start` in the cover; `start`
/// must lie over the word's starting edge.
GroupoidWord lift_word(const DartMap& psi, const RibbonGraph& cover, const RibbonGraph& base,
                       const GroupoidWord& word, Dart start);

/// Covering document: `psi` followed by the images of cover darts 1..N.
DartMap parse_covering_map(std::string_view text);

}  // namespace ribbon
