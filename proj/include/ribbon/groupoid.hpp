#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ribbon/moves.hpp"
#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

// Morphisms of the edge groupoid are paths in the midpoint subdivision of the
// graph. A half-step (d, in) runs from the midpoint of edge(d) to vertex(d);
// (d, out) runs back. Objects are edges, named by their minimal dart.

enum class Direction { in, out };

struct HalfStep {
  Dart dart = 0;
  Direction dir = Direction::in;

  HalfStep inverse() const { return {dart, dir == Direction::in ? Direction::out : Direction::in}; }
  auto operator<=>(const HalfStep&) const = default;
};

/// Turning at a vertex from dart p to dart q: the word (p, in)(q, out).
struct Corner {
  Dart from = 0;
  Dart to = 0;
  auto operator<=>(const Corner&) const = default;
};

class WordError : public DomainError {
 public:
  WordError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Letters alternate in/out, starting with in; an empty word is the identity
/// at `start_edge`. Words built through make_word() satisfy adjacency.
struct GroupoidWord {
  Dart start_edge = 0;
  Dart end_edge = 0;
  std::vector<HalfStep> letters;

  bool is_identity() const { return letters.empty(); }
  std::size_t corners() const { return letters.size() / 2; }
  bool operator==(const GroupoidWord&) const = default;
};

GroupoidWord identity_word(const RibbonGraph& graph, Dart edge);
/// Checks alternation and adjacency (not reducedness); throws WordError.
GroupoidWord make_word(const RibbonGraph& graph, std::vector<HalfStep> letters);
GroupoidWord corner_word(const RibbonGraph& graph, const std::vector<Corner>& corners);

bool is_reduced(const GroupoidWord& word);
GroupoidWord reduce(const GroupoidWord& word);
GroupoidWord compose(const GroupoidWord& first, const GroupoidWord& second);
GroupoidWord inverse(const GroupoidWord& word);

/// Cyclic free reduction of a closed word, as a cyclic letter sequence.
std::vector<HalfStep> cyclic_reduce(const GroupoidWord& closed);
/// True if `lhs` is a rotation of `rhs`.
bool cyclically_equal(const std::vector<HalfStep>& lhs, const std::vector<HalfStep>& rhs);

/// `[+3 -6 +1 -2]` is (3,in)(6,out)(1,in)(2,out); `[@e5]` is the identity at edge 5.
GroupoidWord parse_word(const RibbonGraph& graph, std::string_view text);
std::string format_word(const GroupoidWord& word);

/// Groupoid isomorphism induced by a move or a relabelling. Corners listed
/// in `generator_map` are replaced by the stored letters; all others are
/// kept. `dart_map`, when non-empty, is then applied letter by letter.
struct InducedIso {
  MarkedGraph source;
  MarkedGraph target;
  std::map<Corner, std::vector<HalfStep>> generator_map;
  DartMap dart_map;
};

InducedIso induced_iso(const Move& move, const MarkedGraph& at);
std::vector<InducedIso> induced_isos(const MoveSequence& moves, const MarkedGraph& at);
/// Isomorphism from `source` to `target` given by a dart bijection.
InducedIso relabeling_iso(const MarkedGraph& source, const MarkedGraph& target, DartMap map);

GroupoidWord apply_iso(const InducedIso& iso, const GroupoidWord& word);
GroupoidWord apply_iso(const std::vector<InducedIso>& chain, const GroupoidWord& word);

/// Closed left-turning word through the puncture of `d`, based at edge(d).
GroupoidWord puncture_loop(const RibbonGraph& graph, Dart d);

struct PunctureBijection {
  std::vector<Puncture> source;
  std::vector<Puncture> target;
  /// image[i] indexes into `target`.
  std::vector<std::size_t> image;
  /// Letters of the cyclically reduced image of each source loop.
  std::vector<std::size_t> spliced_lengths;
};

/// Matches punctures of `at` with punctures of apply_sequence(at, moves) by
/// transporting puncture loops; throws if some image is not a puncture loop.
PunctureBijection puncture_bijection(const MoveSequence& moves, const MarkedGraph& at);

/// Action of a groupoid automorphism on every non-trivial corner generator.
struct AutomorphismTable {
  std::vector<std::pair<Corner, GroupoidWord>> entries;
  bool operator==(const AutomorphismTable&) const = default;
};

/// Automorphism of the edge groupoid of `at` induced by a loop of moves
/// followed by the doe-matching isomorphism back to `at`.
AutomorphismTable loop_automorphism(const MarkedGraph& at, const MoveSequence& loop);
bool is_identity(const AutomorphismTable& table);

/// True if the automorphism is naturally isomorphic to the identity: there
/// are paths h_x from each edge x to its image with every corner w: x -> y
/// sent to h_x^-1 w h_y. Such loops are trivial mapping classes even when
/// they permute objects. The base path is searched up to `max_corners`.
bool is_trivial_class(const RibbonGraph& graph, const AutomorphismTable& table, std::size_t max_corners = 10);

/// Shortest doe-move word taking `current` to a marked graph isomorphic to
/// `target`, if one exists.
std::optional<MoveSequence> doe_matching_word(const MarkedGraph& current, const MarkedGraph& target);

/// Free generators of the vertex group at `base_edge`, one per edge of the
/// subdivision outside a spanning tree.
std::vector<GroupoidWord> fundamental_group_basis(const RibbonGraph& graph, Dart base_edge);

}  // namespace ribbon
