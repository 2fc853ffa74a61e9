#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

/// Whitehead move on the edge of `dart`; the rewrite is expressed relative to it.
struct Flip {
  Dart dart = 0;
  bool operator==(const Flip&) const = default;
};

/// Reverse the rotation at the vertex whose minimal dart is `vertex`.
struct Shuffle {
  Dart vertex = 0;
  bool operator==(const Shuffle&) const = default;
};

enum class DoeKind { invert, rotate };

/// invert: doe -> iota(doe); rotate: doe -> sigma(doe).
struct DoeMove {
  DoeKind kind = DoeKind::rotate;
  bool operator==(const DoeMove&) const = default;
};

using Move = std::variant<Flip, Shuffle, DoeMove>;
using MoveSequence = std::vector<Move>;

/// A move that does not apply, with its position in the sequence being applied.
class MoveError : public DomainError {
 public:
  MoveError(std::size_t index, const std::string& message);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Local darts of a flip. With A = sigma(f1), B = sigma^2(f1),
/// D = sigma(f2), C = sigma^2(f2) before the move, the rotation becomes
/// (f1 B D)(f2 C A). Darts keep their identity, so the edge pairing of the
/// flip is the identity on darts.
struct FlipRecord {
  Dart f1 = 0;
  Dart f2 = 0;
  Dart a = 0;
  Dart b = 0;
  Dart c = 0;
  Dart d = 0;
};

bool can_flip(const RibbonGraph& graph, Dart f1);
inline bool can_flip(const MarkedGraph& marked, Dart f1) { return can_flip(marked.graph(), f1); }

FlipRecord flip_record(const RibbonGraph& graph, Dart f1);
RibbonGraph flip(const RibbonGraph& graph, Dart f1);
MarkedGraph flip(const MarkedGraph& marked, Dart f1);

MarkedGraph shuffle(const MarkedGraph& marked, Dart vertex);
MarkedGraph doe_move(const MarkedGraph& marked, DoeKind kind);

bool applicable(const MarkedGraph& marked, const Move& move);
MarkedGraph apply_move(const MarkedGraph& marked, const Move& move);
MarkedGraph apply_sequence(const MarkedGraph& marked, const MoveSequence& moves);

/// A sequence undoing `moves` applied at `at`: a flip by three more flips of
/// the same dart, a rotate by two rotates, invert and shuffle by themselves.
MoveSequence invert_sequence(const MoveSequence& moves, const MarkedGraph& at);

/// Move-script text: one of `flip <dart>`, `shuffle <vertexMinDart>`,
/// `doe invert|rotate` per line; blank lines and `#` comments are skipped.
MoveSequence parse_moves(std::string_view text);
std::string format_move(const Move& move);
std::string format_moves(const MoveSequence& moves);

}  // namespace ribbon
