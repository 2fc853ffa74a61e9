#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ribbon/groupoid.hpp"
#include "ribbon/moves.hpp"
#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

inline constexpr int kEnumerateMaxVertices = 8;
/// Directory holding memoized enumerations, read and written when set.
inline constexpr const char* kCacheDirEnv = "RIBBON_CACHE_DIR";

struct TypeClass {
  int genus = 0;
  int punctures = 0;
  std::vector<CanonicalForm> forms;
};

struct Enumeration {
  int vertices = 0;
  /// Every connected trivalent marked graph with this many vertices, sorted.
  std::vector<CanonicalForm> forms;
  /// The same forms grouped by (genus, punctures), in increasing order.
  std::vector<TypeClass> classes;
};

/// Rooted maps are generated directly in canonical labelling, so each marked
/// type appears exactly once; subtrees of the search run on `threads` workers.
Enumeration enumerate_types(int vertices, int threads = 1);

struct MoveSet {
  bool flips = true;
  bool shuffles = false;
  bool does = true;

  bool operator==(const MoveSet&) const = default;
};

/// Parses a comma-separated subset of `flip,shuffle,doe`; empty means none.
MoveSet parse_move_set(const std::string& text);

struct OrbitBudget {
  std::size_t max_nodes = 100000;
  int max_depth = -1;  ///< negative: unbounded
};

struct OrbitArc {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Expressed on the darts of from_canonical(nodes[from]).
  Move move;

  bool operator==(const OrbitArc&) const = default;
};

struct OrbitGraph {
  CanonicalForm basepoint;
  /// Discovery order; nodes[0] is the basepoint.
  std::vector<CanonicalForm> nodes;
  std::vector<int> depth;
  /// Sorted by (from, to, move text).
  std::vector<OrbitArc> arcs;
  bool complete = true;
  /// Unexpanded nodes left when a budget stopped the search.
  std::size_t frontier = 0;
};

/// Moves applicable at a marked graph: one flip per non-loop edge (at its
/// minimal dart), one shuffle per vertex, both doe moves.
std::vector<Move> available_moves(const MarkedGraph& marked, const MoveSet& moves);

/// Breadth-first closure under `moves`. Each level is expanded on `threads`
/// workers and merged in a fixed order, so the result does not depend on it.
OrbitGraph orbit(const MarkedGraph& start, const MoveSet& moves, const OrbitBudget& budget = {},
                 int threads = 1);

struct FlipCheck {
  Dart dart = 0;
  bool involution = false;  ///< flip^2 is the graph with f1 and iota(f1) exchanged
  bool order_four = false;  ///< flip^4 restores the rotation exactly
};

struct CommutingCheck {
  Dart first = 0;
  Dart second = 0;
  bool commutes = false;
};

struct PentagonCheck {
  Dart first = 0;
  Dart second = 0;
  /// The three vertices have five boundary darts on five distinct edges, so
  /// the two edges span an embedded pentagon.
  bool embedded = false;
  /// Alternating five-flip sequences returning to the starting unmarked type.
  std::vector<MoveSequence> witnesses;
};

struct RelationReport {
  std::vector<FlipCheck> flips;
  std::vector<Dart> skipped_loops;
  std::vector<CommutingCheck> squares;
  std::vector<PentagonCheck> pentagons;

  bool all_hold() const;
};

RelationReport certify_relations(const MarkedGraph& marked);

bool spans_embedded_pentagon(const RibbonGraph& graph, Dart first, Dart second);

/// Searches e, e' alternations of length five from `marked`.
std::vector<MoveSequence> pentagon_witnesses(const MarkedGraph& marked, Dart first, Dart second);

struct IsotropyGenerator {
  MoveSequence loop;
  AutomorphismTable table;
  bool identity = false;
};

inline constexpr int kIsotropyMaxDepth = 8;

/// Loops at the basepoint built from a breadth-first tree of flips and doe
/// moves of radius `depth`, one per non-tree arc. The empty loop comes first;
/// the rest are the distinct automorphism tables found that are not
/// naturally isomorphic to the identity.
std::vector<IsotropyGenerator> isotropy_generators(const MarkedGraph& marked, int depth);

/// Rewrites moves applicable from `source` into moves applicable from
/// `target`, through a marked isomorphism `map` from source to target.
MoveSequence transport_moves(const MoveSequence& moves, const MarkedGraph& source, const MarkedGraph& target,
                             const DartMap& map);

}  // namespace ribbon
