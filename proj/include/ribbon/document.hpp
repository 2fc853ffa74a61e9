#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

struct ParseOptions {
  /// Require 3-cycles in sigma and 2-cycles in iota.
  bool strict_cycles = true;
};

/// Text document:
///
///     darts 6
///     sigma (1 2 3)(4 5 6)
///     iota (1 2)(4 5)(3 6)
///     doe 1
///
/// Cycles may continue on following lines; `#` starts a comment. The doe
/// defaults to dart 1 when the line is absent.
MarkedGraph parse_document(std::string_view text, const ParseOptions& options = {});

/// Canonical text: cycles sorted by minimal element, each starting at it.
std::string serialize(const MarkedGraph& marked);

nlohmann::json to_json(const MarkedGraph& marked);
MarkedGraph from_json(const nlohmann::json& doc);

/// Vertices are sigma orbits, edge labels are iota-orbit minima, and the doe
/// edge carries an arrowhead pointing away from the doe's vertex.
std::string to_dot(const MarkedGraph& marked);

std::string format_cycles(const Cycles& cycles);

}  // namespace ribbon
