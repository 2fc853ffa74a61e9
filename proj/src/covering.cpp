#include "ribbon/covering.hpp"

#include <sstream>

namespace ribbon {

CoveringCheck is_covering(const DartMap& psi, const RibbonGraph& cover, const RibbonGraph& base) {
  const int n = cover.num_darts();
  if (static_cast<int>(psi.size()) != n + 1) return {false, 0, "map must list one image per cover dart"};
  std::vector<int> fibre(static_cast<std::size_t>(base.num_darts()) + 1, 0);
  for (Dart h = 1; h <= n; ++h) {
    const Dart d = psi[static_cast<std::size_t>(h)];
    if (!base.contains(d)) return {false, 0, "dart " + std::to_string(h) + " maps outside the base"};
    ++fibre[static_cast<std::size_t>(d)];
  }
  for (Dart h = 1; h <= n; ++h) {
    const Dart d = psi[static_cast<std::size_t>(h)];
    if (psi[static_cast<std::size_t>(cover.sigma(h))] != base.sigma(d)) {
      return {false, 0, "map does not commute with sigma at dart " + std::to_string(h)};
    }
    if (psi[static_cast<std::size_t>(cover.iota(h))] != base.iota(d)) {
      return {false, 0, "map does not commute with iota at dart " + std::to_string(h)};
    }
  }
  const int degree = fibre.size() > 1 ? fibre[1] : 0;
  for (Dart d = 1; d <= base.num_darts(); ++d) {
    if (fibre[static_cast<std::size_t>(d)] == 0) return {false, 0, "map misses base dart " + std::to_string(d)};
    if (fibre[static_cast<std::size_t>(d)] != degree) return {false, 0, "fibres have different sizes"};
  }
  return {true, degree, {}};
}

GroupoidWord lift_word(const DartMap& psi, const RibbonGraph& cover, const RibbonGraph& base,
                       const GroupoidWord& word, Dart start) {
  const auto check = is_covering(psi, cover, base);
  if (!check.covering) throw DomainError("not a covering: " + check.reason);
  if (!cover.contains(start)) throw DomainError("start dart " + std::to_string(start) + " is not in the cover");
  const Dart over = psi[static_cast<std::size_t>(start)];
  if (base.edge_of(over) != word.start_edge) {
    throw DomainError("start dart " + std::to_string(start) + " does not lie over the starting edge of the word");
  }
  if (word.letters.empty()) return identity_word(cover, cover.edge_of(start));

  std::vector<HalfStep> lifted;
  Dart current = start;
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    const auto& step = word.letters[i];
    Dart chosen = 0;
    if (step.dir == Direction::in) {
      for (Dart h : {current, cover.iota(current)}) {
        if (psi[static_cast<std::size_t>(h)] == step.dart) chosen = h;
      }
    } else {
      for (Dart h : cover.vertex_darts(current)) {
        if (psi[static_cast<std::size_t>(h)] == step.dart) chosen = h;
      }
    }
    if (chosen == 0) throw WordError(i, "letter does not continue the lifted path");
    lifted.push_back({chosen, step.dir});
    current = chosen;
  }
  return make_word(cover, std::move(lifted));
}

DartMap parse_covering_map(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string head;
  int line = 1;
  if (!(in >> head) || head != "psi") throw ParseError(line, "psi", "expected 'psi' followed by dart images");
  DartMap psi{0};
  for (std::string token; in >> token;) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    try {
      std::size_t used = 0;
      const int d = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      psi.push_back(d);
    } catch (const std::exception&) {
      throw ParseError(line, "psi", "bad dart '" + token + "'");
    }
  }
  if (psi.size() == 1) throw ParseError(line, "psi", "empty map");
  return psi;
}

}  // namespace ribbon
