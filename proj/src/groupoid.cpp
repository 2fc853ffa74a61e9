#include "ribbon/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace ribbon {

WordError::WordError(std::size_t position, const std::string& message)
    : DomainError("word position " + std::to_string(position) + ": " + message), position_(position) {}

GroupoidWord identity_word(const RibbonGraph& graph, Dart edge) {
  if (!graph.contains(edge)) throw DomainError("unknown edge: " + std::to_string(edge));
  const Dart e = graph.edge_of(edge);
  return {e, e, {}};
}

GroupoidWord make_word(const RibbonGraph& graph, std::vector<HalfStep> letters) {
  if (letters.empty()) throw WordError(0, "empty word has no base edge");
  if (letters.size() % 2 != 0) throw WordError(letters.size() - 1, "word must end with an out step");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const auto& h = letters[i];
    if (!graph.contains(h.dart)) throw WordError(i, "unknown dart " + std::to_string(h.dart));
    const Direction expected = i % 2 == 0 ? Direction::in : Direction::out;
    if (h.dir != expected) throw WordError(i, "directions must alternate starting with in");
    if (i == 0) continue;
    const Dart prev = letters[i - 1].dart;
    if (h.dir == Direction::out && graph.vertex_of(prev) != graph.vertex_of(h.dart)) {
      throw WordError(i, "darts " + std::to_string(prev) + " and " + std::to_string(h.dart) +
                             " do not share a vertex");
    }
    if (h.dir == Direction::in && graph.edge_of(prev) != graph.edge_of(h.dart)) {
      throw WordError(i, "darts " + std::to_string(prev) + " and " + std::to_string(h.dart) +
                             " do not share an edge");
    }
  }
  GroupoidWord w;
  w.start_edge = graph.edge_of(letters.front().dart);
  w.end_edge = graph.edge_of(letters.back().dart);
  w.letters = std::move(letters);
  return w;
}

GroupoidWord corner_word(const RibbonGraph& graph, const std::vector<Corner>& corners) {
  std::vector<HalfStep> letters;
  for (const auto& c : corners) {
    letters.push_back({c.from, Direction::in});
    letters.push_back({c.to, Direction::out});
  }
  return make_word(graph, std::move(letters));
}

bool is_reduced(const GroupoidWord& word) {
  for (std::size_t i = 1; i < word.letters.size(); ++i) {
    if (word.letters[i] == word.letters[i - 1].inverse()) return false;
  }
  return true;
}

GroupoidWord reduce(const GroupoidWord& word) {
  GroupoidWord out{word.start_edge, word.end_edge, {}};
  out.letters.reserve(word.letters.size());
  for (const auto& h : word.letters) {
    if (!out.letters.empty() && out.letters.back() == h.inverse()) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(h);
    }
  }
  return out;
}

GroupoidWord compose(const GroupoidWord& first, const GroupoidWord& second) {
  if (first.end_edge != second.start_edge) {
    throw DomainError("cannot compose: word ends at edge " + std::to_string(first.end_edge) +
                      " but the next starts at edge " + std::to_string(second.start_edge));
  }
  GroupoidWord joined{first.start_edge, second.end_edge, first.letters};
  joined.letters.insert(joined.letters.end(), second.letters.begin(), second.letters.end());
  return reduce(joined);
}

GroupoidWord inverse(const GroupoidWord& word) {
  GroupoidWord out{word.end_edge, word.start_edge, {}};
  out.letters.reserve(word.letters.size());
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) out.letters.push_back(it->inverse());
  return out;
}

std::vector<HalfStep> cyclic_reduce(const GroupoidWord& closed) {
  if (closed.start_edge != closed.end_edge) throw DomainError("cyclic reduction needs a closed word");
  std::vector<HalfStep> letters = reduce(closed).letters;
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[hi - 1] == letters[lo].inverse()) {
    ++lo;
    --hi;
  }
  return {letters.begin() + static_cast<std::ptrdiff_t>(lo), letters.begin() + static_cast<std::ptrdiff_t>(hi)};
}

bool cyclically_equal(const std::vector<HalfStep>& lhs, const std::vector<HalfStep>& rhs) {
  if (lhs.size() != rhs.size()) return false;
  if (lhs.empty()) return true;
  std::vector<HalfStep> doubled = rhs;
  doubled.insert(doubled.end(), rhs.begin(), rhs.end());
  return std::search(doubled.begin(), doubled.end(), lhs.begin(), lhs.end()) != doubled.end();
}

GroupoidWord parse_word(const RibbonGraph& graph, std::string_view text) {
  std::string s(text);
  const auto open = s.find('[');
  const auto close = s.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw WordError(0, "word literal must be enclosed in [ ]");
  }
  std::istringstream in(s.substr(open + 1, close - open - 1));
  std::string token;
  std::vector<HalfStep> letters;
  std::size_t pos = 0;
  while (in >> token) {
    if (token.rfind("@e", 0) == 0) {
      if (pos != 0 || (in >> token)) throw WordError(pos, "identity literal must stand alone");
      try {
        return identity_word(graph, std::stoi(token.substr(2)));
      } catch (const std::invalid_argument&) {
        throw WordError(pos, "bad edge id");
      }
    }
    if (token.size() < 2 || (token[0] != '+' && token[0] != '-')) {
      throw WordError(pos, "expected +dart or -dart, got '" + token + "'");
    }
    int dart = 0;
    try {
      std::size_t used = 0;
      dart = std::stoi(token.substr(1), &used);
      if (used + 1 != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw WordError(pos, "bad dart in '" + token + "'");
    }
    letters.push_back({dart, token[0] == '+' ? Direction::in : Direction::out});
    ++pos;
  }
  return make_word(graph, std::move(letters));
}

std::string format_word(const GroupoidWord& word) {
  if (word.letters.empty()) return "[@e" + std::to_string(word.start_edge) + "]";
  std::string out = "[";
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    if (i) out += ' ';
    out += word.letters[i].dir == Direction::in ? '+' : '-';
    out += std::to_string(word.letters[i].dart);
  }
  return out + "]";
}

namespace {

void put(std::map<Corner, std::vector<HalfStep>>& table, Corner corner, std::vector<Corner> image) {
  std::vector<HalfStep> letters;
  for (const auto& c : image) {
    letters.push_back({c.from, Direction::in});
    letters.push_back({c.to, Direction::out});
  }
  table[corner] = std::move(letters);
}

}  // namespace

InducedIso induced_iso(const Move& move, const MarkedGraph& at) {
  if (!applicable(at, move)) throw DomainError("inapplicable " + format_move(move));
  InducedIso iso{at, apply_move(at, move), {}, {}};
  if (const auto* f = std::get_if<Flip>(&move)) {
    const FlipRecord r = flip_record(at.graph(), f->dart);
    auto& t = iso.generator_map;
    put(t, {r.a, r.f1}, {{r.a, r.f2}});
    put(t, {r.f1, r.a}, {{r.f2, r.a}});
    put(t, {r.d, r.f2}, {{r.d, r.f1}});
    put(t, {r.f2, r.d}, {{r.f1, r.d}});
    put(t, {r.a, r.b}, {{r.a, r.f2}, {r.f1, r.b}});
    put(t, {r.b, r.a}, {{r.b, r.f1}, {r.f2, r.a}});
    put(t, {r.c, r.d}, {{r.c, r.f2}, {r.f1, r.d}});
    put(t, {r.d, r.c}, {{r.d, r.f1}, {r.f2, r.c}});
  }
  // Shuffles keep the underlying graph and doe moves keep everything, so both
  // induce the identity on words.
  return iso;
}

std::vector<InducedIso> induced_isos(const MoveSequence& moves, const MarkedGraph& at) {
  std::vector<InducedIso> out;
  MarkedGraph state = at;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!applicable(state, moves[i])) throw MoveError(i, "inapplicable " + format_move(moves[i]));
    out.push_back(induced_iso(moves[i], state));
    state = out.back().target;
  }
  return out;
}

InducedIso relabeling_iso(const MarkedGraph& source, const MarkedGraph& target, DartMap map) {
  const auto& s = source.graph();
  const auto& t = target.graph();
  if (static_cast<int>(map.size()) != s.num_darts() + 1 || s.num_darts() != t.num_darts()) {
    throw DomainError("relabelling has the wrong size");
  }
  for (Dart d = 1; d <= s.num_darts(); ++d) {
    const Dart m = map[static_cast<std::size_t>(d)];
    if (map[static_cast<std::size_t>(s.sigma(d))] != t.sigma(m) ||
        map[static_cast<std::size_t>(s.iota(d))] != t.iota(m)) {
      throw DomainError("relabelling does not commute with sigma and iota at dart " + std::to_string(d));
    }
  }
  return InducedIso{source, target, {}, std::move(map)};
}

GroupoidWord apply_iso(const InducedIso& iso, const GroupoidWord& word) {
  const auto& target = iso.target.graph();
  auto relabel = [&iso](Dart d) {
    return iso.dart_map.empty() ? d : iso.dart_map[static_cast<std::size_t>(d)];
  };
  if (word.is_identity()) return identity_word(target, relabel(word.start_edge));
  std::vector<HalfStep> letters;
  letters.reserve(word.letters.size() + 4);
  for (std::size_t i = 0; i + 1 < word.letters.size(); i += 2) {
    const Corner c{word.letters[i].dart, word.letters[i + 1].dart};
    if (auto it = iso.generator_map.find(c); it != iso.generator_map.end()) {
      letters.insert(letters.end(), it->second.begin(), it->second.end());
    } else {
      letters.push_back(word.letters[i]);
      letters.push_back(word.letters[i + 1]);
    }
  }
  for (auto& h : letters) h.dart = relabel(h.dart);
  return reduce(make_word(target, std::move(letters)));
}

GroupoidWord apply_iso(const std::vector<InducedIso>& chain, const GroupoidWord& word) {
  GroupoidWord w = word;
  for (const auto& iso : chain) w = apply_iso(iso, w);
  return w;
}

GroupoidWord puncture_loop(const RibbonGraph& graph, Dart d) {
  require_valid(graph);
  if (!graph.contains(d)) throw DomainError("unknown dart: " + std::to_string(d));
  std::vector<HalfStep> letters;
  Dart x = d;
  do {
    letters.push_back({graph.iota(x), Direction::in});
    x = graph.lambda(x);
    letters.push_back({x, Direction::out});
  } while (x != d);
  return make_word(graph, std::move(letters));
}

PunctureBijection puncture_bijection(const MoveSequence& moves, const MarkedGraph& at) {
  const auto chain = induced_isos(moves, at);
  const MarkedGraph end = chain.empty() ? at : chain.back().target;
  PunctureBijection out;
  out.source = punctures(at.graph());
  out.target = punctures(end.graph());
  std::vector<std::size_t> owner(static_cast<std::size_t>(end.graph().num_darts()) + 1, 0);
  for (std::size_t j = 0; j < out.target.size(); ++j) {
    for (Dart x : out.target[j].cycle) owner[static_cast<std::size_t>(x)] = j;
  }
  std::vector<bool> used(out.target.size(), false);
  for (std::size_t i = 0; i < out.source.size(); ++i) {
    const Dart base = out.source[i].cycle.front();
    const auto image = cyclic_reduce(apply_iso(chain, puncture_loop(at.graph(), base)));
    const auto first_out =
        std::find_if(image.begin(), image.end(), [](const HalfStep& h) { return h.dir == Direction::out; });
    if (first_out == image.end()) {
      throw Error("puncture at dart " + std::to_string(base) + " maps to a trivial loop");
    }
    const std::size_t j = owner[static_cast<std::size_t>(first_out->dart)];
    const auto expected = cyclic_reduce(puncture_loop(end.graph(), out.target[j].cycle.front()));
    if (!cyclically_equal(image, expected)) {
      throw Error("image of the puncture at dart " + std::to_string(base) + " is not a puncture loop");
    }
    if (used[j]) throw Error("two punctures map to the same puncture");
    used[j] = true;
    out.image.push_back(j);
    out.spliced_lengths.push_back(image.size() / 2);
  }
  if (out.source.size() != out.target.size()) throw Error("puncture counts differ");
  return out;
}

AutomorphismTable loop_automorphism(const MarkedGraph& at, const MoveSequence& loop) {
  auto chain = induced_isos(loop, at);
  const MarkedGraph end = chain.empty() ? at : chain.back().target;
  auto back = marked_isomorphism(end, at);
  if (!back) throw DomainError("move sequence is not a loop at the base graph");
  chain.push_back(relabeling_iso(end, at, std::move(*back)));
  const auto& g = at.graph();
  AutomorphismTable table;
  for (const auto& vertex : g.sigma_cycles()) {
    for (Dart p : vertex) {
      for (Dart q : vertex) {
        if (p == q) continue;
        const auto word = corner_word(g, {{p, q}});
        table.entries.emplace_back(Corner{p, q}, apply_iso(chain, word));
      }
    }
  }
  return table;
}

bool is_identity(const AutomorphismTable& table) {
  return std::all_of(table.entries.begin(), table.entries.end(), [](const auto& entry) {
    const auto& [corner, image] = entry;
    return image.letters.size() == 2 && image.letters[0].dart == corner.from &&
           image.letters[1].dart == corner.to;
  });
}

namespace {

// Reduced paths from edge `from` to edge `to` with at most `max_corners` corners.
void reduced_paths(const RibbonGraph& g, Dart from, Dart to, std::size_t max_corners,
                   const std::function<bool(const GroupoidWord&)>& visit) {
  GroupoidWord path{from, from, {}};
  std::function<bool(Dart)> extend = [&](Dart edge) {
    path.end_edge = edge;
    if (edge == to && visit(path)) return true;
    if (path.corners() == max_corners) return false;
    for (Dart d : {edge, g.iota(edge)}) {
      if (!path.letters.empty() && path.letters.back().dart == d) continue;
      for (Dart q : g.vertex_darts(d)) {
        if (q == d) continue;
        path.letters.push_back({d, Direction::in});
        path.letters.push_back({q, Direction::out});
        const bool done = extend(g.edge_of(q));
        path.letters.resize(path.letters.size() - 2);
        if (done) return true;
      }
    }
    path.end_edge = edge;
    return false;
  };
  extend(from);
}

}  // namespace

bool is_trivial_class(const RibbonGraph& graph, const AutomorphismTable& table, std::size_t max_corners) {
  if (table.entries.empty()) return true;
  std::map<Dart, Dart> image_of;
  for (const auto& [corner, word] : table.entries) {
    image_of[graph.edge_of(corner.from)] = word.start_edge;
    image_of[graph.edge_of(corner.to)] = word.end_edge;
  }
  Dart base = image_of.begin()->first;
  for (const auto& [x, y] : image_of) {
    if (x == y) {
      base = x;
      break;
    }
  }
  auto check = [&](const GroupoidWord& seed) {
    std::map<Dart, GroupoidWord> eta{{base, seed}};
    bool grown = true;
    while (grown) {
      grown = false;
      for (const auto& [corner, image] : table.entries) {
        const Dart x = graph.edge_of(corner.from);
        const Dart y = graph.edge_of(corner.to);
        if (!eta.count(x) || eta.count(y)) continue;
        const auto w = corner_word(graph, {corner});
        eta.emplace(y, compose(compose(inverse(w), eta.at(x)), image));
        grown = true;
      }
    }
    for (const auto& [corner, image] : table.entries) {
      const auto w = corner_word(graph, {corner});
      const auto& hx = eta.at(graph.edge_of(corner.from));
      const auto& hy = eta.at(graph.edge_of(corner.to));
      if (compose(compose(inverse(hx), w), hy) != reduce(image)) return false;
    }
    return true;
  };
  bool found = false;
  reduced_paths(graph, base, image_of.at(base), max_corners, [&](const GroupoidWord& h) {
    found = check(h);
    return found;
  });
  return found;
}

std::optional<MoveSequence> doe_matching_word(const MarkedGraph& current, const MarkedGraph& target) {
  const auto& g = current.graph();
  const CanonicalForm goal = canonical_form(target);
  std::vector<std::optional<MoveSequence>> path(static_cast<std::size_t>(g.num_darts()) + 1);
  std::deque<Dart> queue{current.doe()};
  path[static_cast<std::size_t>(current.doe())] = MoveSequence{};
  while (!queue.empty()) {
    const Dart d = queue.front();
    queue.pop_front();
    if (canonical_form(MarkedGraph(g, d)) == goal) return path[static_cast<std::size_t>(d)];
    for (DoeKind kind : {DoeKind::invert, DoeKind::rotate}) {
      const Dart next = kind == DoeKind::invert ? g.iota(d) : g.sigma(d);
      if (path[static_cast<std::size_t>(next)]) continue;
      auto p = *path[static_cast<std::size_t>(d)];
      p.emplace_back(DoeMove{kind});
      path[static_cast<std::size_t>(next)] = std::move(p);
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::vector<GroupoidWord> fundamental_group_basis(const RibbonGraph& graph, Dart base_edge) {
  require_valid_connected(graph);
  if (!graph.contains(base_edge)) throw DomainError("unknown edge: " + std::to_string(base_edge));
  const std::size_t n = static_cast<std::size_t>(graph.num_darts()) + 1;
  // Paths in the subdivision graph from the base midpoint to each edge
  // midpoint and each vertex, keyed by minimal dart.
  std::vector<std::optional<std::vector<HalfStep>>> to_edge(n), to_vertex(n);
  std::vector<bool> tree_dart(n, false);
  struct Node {
    bool is_edge;
    Dart key;
  };
  std::deque<Node> queue;
  const Dart base = graph.edge_of(base_edge);
  to_edge[static_cast<std::size_t>(base)] = std::vector<HalfStep>{};
  queue.push_back({true, base});
  while (!queue.empty()) {
    const Node node = queue.front();
    queue.pop_front();
    if (node.is_edge) {
      const auto& path = *to_edge[static_cast<std::size_t>(node.key)];
      for (Dart d : {node.key, graph.iota(node.key)}) {
        const Dart v = graph.vertex_of(d);
        if (to_vertex[static_cast<std::size_t>(v)]) continue;
        auto p = path;
        p.push_back({d, Direction::in});
        to_vertex[static_cast<std::size_t>(v)] = std::move(p);
        tree_dart[static_cast<std::size_t>(d)] = true;
        queue.push_back({false, v});
      }
    } else {
      const auto& path = *to_vertex[static_cast<std::size_t>(node.key)];
      for (Dart d : graph.vertex_darts(node.key)) {
        const Dart e = graph.edge_of(d);
        if (to_edge[static_cast<std::size_t>(e)]) continue;
        auto p = path;
        p.push_back({d, Direction::out});
        to_edge[static_cast<std::size_t>(e)] = std::move(p);
        tree_dart[static_cast<std::size_t>(d)] = true;
        queue.push_back({true, e});
      }
    }
  }
  std::vector<GroupoidWord> basis;
  for (Dart d = 1; d <= graph.num_darts(); ++d) {
    if (tree_dart[static_cast<std::size_t>(d)]) continue;
    std::vector<HalfStep> letters = *to_edge[static_cast<std::size_t>(graph.edge_of(d))];
    letters.push_back({d, Direction::in});
    const auto& back = *to_vertex[static_cast<std::size_t>(graph.vertex_of(d))];
    for (auto it = back.rbegin(); it != back.rend(); ++it) letters.push_back(it->inverse());
    basis.push_back(reduce(make_word(graph, std::move(letters))));
  }
  return basis;
}

}  // namespace ribbon
