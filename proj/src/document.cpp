#include "ribbon/document.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace ribbon {

namespace {

struct Section {
  int line = 0;
  std::string body;
  // (line, column offset in body) of each appended chunk, for diagnostics
  std::vector<std::pair<std::size_t, int>> line_starts;
};

int line_at(const Section& section, std::size_t offset) {
  int line = section.line;
  for (const auto& [start, l] : section.line_starts) {
    if (start <= offset) line = l;
  }
  return line;
}

Cycles parse_cycles(const Section& section, const char* field) {
  Cycles cycles;
  const std::string& s = section.body;
  std::size_t i = 0;
  auto fail = [&](std::size_t at, const std::string& msg) -> void {
    throw ParseError(line_at(section, at), field, msg);
  };
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(') fail(i, std::string("expected '(' but found '") + s[i] + "'");
    const std::size_t open = i++;
    Cycle cycle;
    bool closed = false;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
      } else if (c == ')') {
        ++i;
        closed = true;
        break;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j - i > 9) fail(i, "dart id too large");
        cycle.push_back(std::stoi(s.substr(i, j - i)));
        i = j;
      } else {
        fail(i, std::string("unexpected character '") + c + "'");
      }
    }
    if (!closed) fail(open, "unterminated cycle");
    if (cycle.empty()) fail(open, "empty cycle");
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int parse_int(const Section& section, const char* field) {
  std::istringstream in(section.body);
  long long value = 0;
  std::string rest;
  if (!(in >> value) || (in >> rest)) {
    throw ParseError(section.line, field, "expected a single integer");
  }
  if (value < -1000000000LL || value > 1000000000LL) {
    throw ParseError(section.line, field, "integer out of range");
  }
  return static_cast<int>(value);
}

void check_cover(const Cycles& cycles, int darts, std::size_t size, const Section& section,
                 const char* field) {
  std::vector<bool> seen(static_cast<std::size_t>(darts) + 1, false);
  for (const auto& cycle : cycles) {
    if (cycle.size() != size) {
      throw ParseError(section.line, field,
                       "cycle starting at " + std::to_string(cycle.front()) + " has length " +
                           std::to_string(cycle.size()) + ", expected " + std::to_string(size));
    }
    for (Dart d : cycle) {
      if (d >= 1 && d <= darts) seen[static_cast<std::size_t>(d)] = true;
    }
  }
  for (Dart d = 1; d <= darts; ++d) {
    if (!seen[static_cast<std::size_t>(d)]) {
      throw ParseError(section.line, field, "not a bijection: dart " + std::to_string(d) + " missing");
    }
  }
}

Cycles normalized(Cycles cycles) {
  for (auto& cycle : cycles) {
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace

MarkedGraph parse_document(std::string_view text, const ParseOptions& options) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string first;
    if (!(words >> first)) continue;
    std::string rest;
    if (first == "darts" || first == "sigma" || first == "iota" || first == "doe") {
      if (sections.count(first)) throw ParseError(line_no, first, "duplicate section");
      current = first;
      Section& s = sections[first];
      s.line = line_no;
      std::getline(words, rest);
      s.line_starts.emplace_back(0, line_no);
      s.body = rest;
    } else {
      if (current.empty() || current == "darts" || current == "doe") {
        throw ParseError(line_no, first, "unknown keyword '" + first + "'");
      }
      Section& s = sections[current];
      s.line_starts.emplace_back(s.body.size() + 1, line_no);
      s.body += " " + raw;
    }
  }
  for (const char* required : {"darts", "sigma", "iota"}) {
    if (!sections.count(required)) throw ParseError(line_no, required, "missing section");
  }
  const int darts = parse_int(sections["darts"], "darts");
  if (darts <= 0) throw ParseError(sections["darts"].line, "darts", "graph must be nonempty");
  const Cycles sigma = parse_cycles(sections["sigma"], "sigma");
  const Cycles iota = parse_cycles(sections["iota"], "iota");
  if (options.strict_cycles) {
    check_cover(sigma, darts, 3, sections["sigma"], "sigma");
    check_cover(iota, darts, 2, sections["iota"], "iota");
  }
  RibbonGraph graph;
  try {
    graph = RibbonGraph::from_cycles(darts, sigma, iota);
  } catch (const ParseError& e) {
    const auto& s = sections[e.field()];
    throw ParseError(s.line, e.field(), e.detail());
  }
  Dart doe = 1;
  if (sections.count("doe")) {
    doe = parse_int(sections["doe"], "doe");
    if (!graph.contains(doe)) throw ParseError(sections["doe"].line, "doe", "doe not a dart");
  }
  return MarkedGraph(std::move(graph), doe);
}

std::string format_cycles(const Cycles& cycles) {
  std::ostringstream out;
  for (const auto& cycle : cycles) {
    out << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) out << ' ';
      out << cycle[i];
    }
    out << ')';
  }
  return out.str();
}

std::string serialize(const MarkedGraph& marked) {
  const auto& g = marked.graph();
  std::ostringstream out;
  out << "darts " << g.num_darts() << '\n';
  out << "sigma " << format_cycles(normalized(g.sigma_cycles())) << '\n';
  out << "iota " << format_cycles(normalized(g.iota_cycles())) << '\n';
  out << "doe " << marked.doe() << '\n';
  return out.str();
}

nlohmann::json to_json(const MarkedGraph& marked) {
  const auto& g = marked.graph();
  return nlohmann::json{{"darts", g.num_darts()},
                        {"sigma", normalized(g.sigma_cycles())},
                        {"iota", normalized(g.iota_cycles())},
                        {"doe", marked.doe()}};
}

MarkedGraph from_json(const nlohmann::json& doc) {
  try {
    const int darts = doc.at("darts").get<int>();
    if (darts <= 0) throw ParseError(0, "darts", "graph must be nonempty");
    auto sigma = doc.at("sigma").get<Cycles>();
    auto iota = doc.at("iota").get<Cycles>();
    Section dummy;
    check_cover(sigma, darts, 3, dummy, "sigma");
    check_cover(iota, darts, 2, dummy, "iota");
    auto graph = RibbonGraph::from_cycles(darts, sigma, iota);
    const Dart doe = doc.contains("doe") ? doc.at("doe").get<int>() : 1;
    if (!graph.contains(doe)) throw ParseError(0, "doe", "doe not a dart");
    return MarkedGraph(std::move(graph), doe);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "json", e.what());
  }
}

std::string to_dot(const MarkedGraph& marked) {
  const auto& g = marked.graph();
  std::ostringstream out;
  out << "graph ribbon {\n";
  for (const auto& cycle : normalized(g.sigma_cycles())) {
    out << "  v" << cycle.front() << " [label=\"" << format_cycles({cycle}) << "\"];\n";
  }
  for (const auto& pair : normalized(g.iota_cycles())) {
    const Dart a = pair.front();
    const Dart b = pair.size() > 1 ? pair[1] : pair.front();
    const bool is_doe = a == marked.doe() || b == marked.doe();
    const Dart tail = is_doe ? marked.doe() : a;
    const Dart head = g.iota(tail);
    out << "  v" << g.vertex_of(tail) << " -- v" << g.vertex_of(head) << " [label=\"" << a << "\"";
    if (is_doe) out << ", dir=forward, arrowhead=normal";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ribbon
