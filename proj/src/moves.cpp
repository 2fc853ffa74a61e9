#include "ribbon/moves.hpp"

#include <sstream>

namespace ribbon {

MoveError::MoveError(std::size_t index, const std::string& message)
    : DomainError("move " + std::to_string(index) + ": " + message), index_(index) {}

namespace {

void require_dart(const RibbonGraph& graph, Dart d) {
  if (!graph.contains(d)) throw DomainError("unknown dart: " + std::to_string(d));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool can_flip(const RibbonGraph& graph, Dart f1) {
  require_dart(graph, f1);
  return graph.vertex_of(f1) != graph.vertex_of(graph.iota(f1));
}

FlipRecord flip_record(const RibbonGraph& graph, Dart f1) {
  require_dart(graph, f1);
  FlipRecord r;
  r.f1 = f1;
  r.f2 = graph.iota(f1);
  r.a = graph.sigma(f1);
  r.b = graph.sigma(r.a);
  r.d = graph.sigma(r.f2);
  r.c = graph.sigma(r.d);
  return r;
}

RibbonGraph flip(const RibbonGraph& graph, Dart f1) {
  require_valid(graph);
  if (!can_flip(graph, f1)) throw DomainError("unflippable loop edge at dart " + std::to_string(f1));
  const FlipRecord r = flip_record(graph, f1);
  DartMap sigma = graph.sigma_map();
  auto set = [&sigma](Dart from, Dart to) { sigma[static_cast<std::size_t>(from)] = to; };
  set(r.f1, r.b);
  set(r.b, r.d);
  set(r.d, r.f1);
  set(r.f2, r.c);
  set(r.c, r.a);
  set(r.a, r.f2);
  return graph.with_sigma(std::move(sigma));
}

MarkedGraph flip(const MarkedGraph& marked, Dart f1) {
  return MarkedGraph(flip(marked.graph(), f1), marked.doe());
}

MarkedGraph shuffle(const MarkedGraph& marked, Dart vertex) {
  const auto& g = marked.graph();
  require_valid(g);
  if (!g.contains(vertex) || g.vertex_of(vertex) != vertex) {
    throw DomainError("unknown vertex: " + std::to_string(vertex));
  }
  return MarkedGraph(reverse_rotations(g, {vertex}), marked.doe());
}

MarkedGraph doe_move(const MarkedGraph& marked, DoeKind kind) {
  const auto& g = marked.graph();
  const Dart doe = kind == DoeKind::invert ? g.iota(marked.doe()) : g.sigma(marked.doe());
  return MarkedGraph(g, doe);
}

bool applicable(const MarkedGraph& marked, const Move& move) {
  const auto& g = marked.graph();
  return std::visit(overloaded{
                        [&](const Flip& m) { return g.contains(m.dart) && can_flip(g, m.dart); },
                        [&](const Shuffle& m) { return g.contains(m.vertex) && g.vertex_of(m.vertex) == m.vertex; },
                        [&](const DoeMove&) { return true; },
                    },
                    move);
}

MarkedGraph apply_move(const MarkedGraph& marked, const Move& move) {
  return std::visit(overloaded{
                        [&](const Flip& m) { return flip(marked, m.dart); },
                        [&](const Shuffle& m) { return shuffle(marked, m.vertex); },
                        [&](const DoeMove& m) { return doe_move(marked, m.kind); },
                    },
                    move);
}

MarkedGraph apply_sequence(const MarkedGraph& marked, const MoveSequence& moves) {
  MarkedGraph state = marked;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!applicable(state, moves[i])) {
      throw MoveError(i, "inapplicable " + format_move(moves[i]));
    }
    state = apply_move(state, moves[i]);
  }
  return state;
}

MoveSequence invert_sequence(const MoveSequence& moves, const MarkedGraph& at) {
  // Replaying validates applicability at every step.
  (void)apply_sequence(at, moves);
  MoveSequence out;
  for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
    std::visit(overloaded{
                   [&](const Flip& m) { out.insert(out.end(), 3, m); },
                   [&](const Shuffle& m) { out.push_back(m); },
                   [&](const DoeMove& m) {
                     if (m.kind == DoeKind::rotate) {
                       out.insert(out.end(), 2, m);
                     } else {
                       out.push_back(m);
                     }
                   },
               },
               *it);
  }
  return out;
}

std::string format_move(const Move& move) {
  return std::visit(overloaded{
                        [](const Flip& m) { return "flip " + std::to_string(m.dart); },
                        [](const Shuffle& m) { return "shuffle " + std::to_string(m.vertex); },
                        [](const DoeMove& m) {
                          return std::string(m.kind == DoeKind::invert ? "doe invert" : "doe rotate");
                        },
                    },
                    move);
}

std::string format_moves(const MoveSequence& moves) {
  std::string out;
  for (const auto& m : moves) out += format_move(m) + "\n";
  return out;
}

MoveSequence parse_moves(std::string_view text) {
  MoveSequence out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string verb;
    if (!(words >> verb)) continue;
    std::string arg;
    std::string extra;
    if (!(words >> arg)) throw ParseError(line_no, verb, "missing argument");
    if (words >> extra) throw ParseError(line_no, verb, "trailing input '" + extra + "'");
    if (verb == "doe") {
      if (arg == "invert") {
        out.emplace_back(DoeMove{DoeKind::invert});
      } else if (arg == "rotate") {
        out.emplace_back(DoeMove{DoeKind::rotate});
      } else {
        throw ParseError(line_no, verb, "expected invert or rotate");
      }
      continue;
    }
    int dart = 0;
    try {
      std::size_t used = 0;
      dart = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ParseError(line_no, verb, "expected a dart id, got '" + arg + "'");
    }
    if (verb == "flip") {
      out.emplace_back(Flip{dart});
    } else if (verb == "shuffle") {
      out.emplace_back(Shuffle{dart});
    } else {
      throw ParseError(line_no, verb, "unknown move '" + verb + "'");
    }
  }
  return out;
}

}  // namespace ribbon
