#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ribbon/covering.hpp"
#include "ribbon/document.hpp"
#include "ribbon/explorer.hpp"
#include "ribbon/farey_tree.hpp"
#include "ribbon/groupoid.hpp"
#include "ribbon/moves.hpp"
#include "ribbon/ppsl2.hpp"
#include "ribbon/unicyclic.hpp"

using namespace ribbon;
using nlohmann::json;

namespace {

constexpr int kDomainExit = 1;
constexpr int kUsageExit = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::size_t budget_nodes = 100000;
  int budget_depth = -1;
  std::string moves = "flip,doe";
  int threads = 1;
};

// A readable path is loaded; anything else is taken as an inline literal
// with `;` standing for a line break.
std::string load(const std::string& source) {
  if (source == "-") {
    std::ostringstream all;
    all << std::cin.rdbuf();
    return all.str();
  }
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream in(source);
    std::ostringstream all;
    all << in.rdbuf();
    return all.str();
  }
  if (source.find_first_of("([;") == std::string::npos && source.find("psi") == std::string::npos) {
    throw UsageError("no such file: " + source);
  }
  std::string text = source;
  for (char& c : text) {
    if (c == ';') c = '\n';
  }
  return text;
}

MarkedGraph load_graph(const std::string& source, bool strict = true) {
  return parse_document(load(source), ParseOptions{strict});
}

void emit_graph(const Options& opt, const MarkedGraph& m) {
  if (opt.format == "dot") {
    std::cout << to_dot(m);
  } else if (opt.format == "structured") {
    std::cout << to_json(m).dump(2) << '\n';
  } else {
    std::cout << serialize(m);
  }
}

std::string code_text(const CanonicalForm& form) {
  std::string out;
  for (std::size_t i = 0; i < form.code.size(); ++i) out += (i ? " " : "") + std::to_string(form.code[i]);
  return out;
}

json invariants_json(const Invariants& inv) {
  return {{"V", inv.vertices}, {"E", inv.edges}, {"F", inv.faces},
          {"g", inv.genus},    {"n", inv.punctures}, {"rank", inv.rank}};
}

json word_json(const GroupoidWord& w) { return format_word(w); }

int cmd_validate(const Options& opt, const std::string& file) {
  const auto m = load_graph(file, false);
  const auto report = validate(m.graph());
  if (opt.format == "structured") {
    json issues = json::array();
    for (const auto& i : report.issues) issues.push_back({{"invariant", i.invariant}, {"witness", i.witness}});
    std::cout << json{{"ok", report.ok()}, {"connected", report.connected}, {"issues", issues}}.dump(2) << '\n';
  } else {
    if (report.ok()) std::cout << "ok\n";
    for (const auto& i : report.issues) std::cout << "violated: " << i.invariant << " (dart " << i.witness << ")\n";
    std::cout << "connected: " << (report.connected ? "yes" : "no") << '\n';
  }
  return report.ok() && report.connected ? 0 : kDomainExit;
}

int cmd_invariants(const Options& opt, const std::string& file) {
  const auto m = load_graph(file);
  require_valid(m.graph());
  const auto inv = invariants(m.graph());
  if (opt.format == "structured") {
    json out = invariants_json(inv);
    json lengths = json::array();
    for (const auto& p : punctures(m.graph())) lengths.push_back(p.length());
    out["puncture_lengths"] = lengths;
    if (m.graph().connected()) out["canonical_form"] = canonical_form(m).code;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "V E F g n rank\n"
              << inv.vertices << ' ' << inv.edges << ' ' << inv.faces << ' ' << inv.genus << ' ' << inv.punctures
              << ' ' << inv.rank << '\n';
  }
  return 0;
}

int cmd_moves(const Options& opt, const std::string& file, const MoveSequence& moves) {
  emit_graph(opt, apply_sequence(load_graph(file), moves));
  return 0;
}

int cmd_move(const Options& opt, const std::string& file, const Move& move) {
  emit_graph(opt, apply_move(load_graph(file), move));
  return 0;
}

void print_orbit(const Options& opt, const OrbitGraph& o) {
  if (opt.format == "dot") {
    std::cout << "digraph orbit {\n";
    for (std::size_t i = 0; i < o.nodes.size(); ++i) {
      std::cout << "  n" << i << " [label=\"" << i << "\"" << (i == 0 ? ", shape=doublecircle" : "") << "];\n";
    }
    for (const auto& a : o.arcs) {
      std::cout << "  n" << a.from << " -> n" << a.to << " [label=\"" << format_move(a.move) << "\"];\n";
    }
    std::cout << "}\n";
    return;
  }
  if (opt.format == "structured") {
    json nodes = json::array();
    for (std::size_t i = 0; i < o.nodes.size(); ++i) {
      nodes.push_back({{"id", i}, {"depth", o.depth[i]}, {"code", o.nodes[i].code}});
    }
    json arcs = json::array();
    for (const auto& a : o.arcs) arcs.push_back({{"from", a.from}, {"to", a.to}, {"move", format_move(a.move)}});
    std::cout << json{{"complete", o.complete}, {"frontier", o.frontier}, {"nodes", nodes}, {"arcs", arcs}}.dump(2)
              << '\n';
    return;
  }
  std::cout << "nodes " << o.nodes.size() << "\narcs " << o.arcs.size() << "\ncomplete "
            << (o.complete ? "yes" : "no") << '\n';
  if (!o.complete) std::cout << "frontier " << o.frontier << '\n';
  for (std::size_t i = 0; i < o.nodes.size(); ++i) {
    std::cout << "node " << i << " depth " << o.depth[i] << " : " << code_text(o.nodes[i]) << '\n';
  }
  for (const auto& a : o.arcs) std::cout << "arc " << a.from << " -> " << a.to << " : " << format_move(a.move) << '\n';
}

int cmd_orbit(const Options& opt, const std::string& file) {
  const auto m = load_graph(file);
  const auto o = orbit(m, parse_move_set(opt.moves), OrbitBudget{opt.budget_nodes, opt.budget_depth}, opt.threads);
  print_orbit(opt, o);
  if (!o.complete) std::cerr << "budget exhausted; partial orbit with frontier " << o.frontier << '\n';
  return 0;
}

int cmd_enumerate(const Options& opt, int vertices, bool list) {
  const auto e = enumerate_types(vertices, opt.threads);
  if (opt.format == "structured") {
    json classes = json::array();
    for (const auto& c : e.classes) {
      json forms = json::array();
      for (const auto& f : c.forms) forms.push_back(f.code);
      classes.push_back({{"genus", c.genus}, {"punctures", c.punctures}, {"count", c.forms.size()}, {"forms", forms}});
    }
    std::cout << json{{"vertices", vertices}, {"total", e.forms.size()}, {"classes", classes}}.dump(2) << '\n';
    return 0;
  }
  std::cout << "V " << vertices << " marked types " << e.forms.size() << '\n';
  for (const auto& c : e.classes) {
    std::cout << "g " << c.genus << " n " << c.punctures << " : " << c.forms.size() << '\n';
    if (list) {
      for (const auto& f : c.forms) std::cout << "  " << code_text(f) << '\n';
    }
  }
  return 0;
}

int cmd_relations(const Options& opt, const std::string& file) {
  const auto m = load_graph(file);
  const auto r = certify_relations(m);
  if (opt.format == "structured") {
    json flips = json::array();
    for (const auto& f : r.flips) {
      flips.push_back({{"dart", f.dart}, {"involution", f.involution}, {"order_four", f.order_four}});
    }
    json squares = json::array();
    for (const auto& s : r.squares) squares.push_back({{"edges", {s.first, s.second}}, {"commutes", s.commutes}});
    json pentagons = json::array();
    for (const auto& p : r.pentagons) {
      json witnesses = json::array();
      for (const auto& w : p.witnesses) witnesses.push_back(format_moves(w));
      pentagons.push_back({{"edges", {p.first, p.second}}, {"embedded", p.embedded}, {"witnesses", witnesses}});
    }
    std::cout << json{{"all_hold", r.all_hold()},    {"flips", flips},         {"skipped_loops", r.skipped_loops},
                      {"commuting_squares", squares}, {"pentagons", pentagons}}
                     .dump(2)
              << '\n';
    return r.all_hold() ? 0 : kDomainExit;
  }
  for (const auto& f : r.flips) {
    std::cout << "flip " << f.dart << ": involution " << (f.involution ? "holds" : "FAILS") << ", order four "
              << (f.order_four ? "holds" : "FAILS") << '\n';
  }
  for (Dart d : r.skipped_loops) std::cout << "loop " << d << ": skipped\n";
  for (const auto& s : r.squares) {
    std::cout << "square " << s.first << ' ' << s.second << ": " << (s.commutes ? "commutes" : "FAILS") << '\n';
  }
  for (const auto& p : r.pentagons) {
    std::cout << "pentagon " << p.first << ' ' << p.second << (p.embedded ? " embedded" : "") << ": "
              << p.witnesses.size() << " witness" << (p.witnesses.size() == 1 ? "" : "es") << '\n';
    for (const auto& w : p.witnesses) {
      std::string line = format_moves(w);
      for (char& c : line) {
        if (c == '\n') c = ';';
      }
      std::cout << "  " << line << '\n';
    }
  }
  std::cout << (r.all_hold() ? "all relations hold\n" : "some relations FAIL\n");
  return r.all_hold() ? 0 : kDomainExit;
}

int cmd_isotropy(const Options& opt, const std::string& file, int depth) {
  const auto m = load_graph(file);
  const auto gens = isotropy_generators(m, depth);
  if (opt.format == "structured") {
    json out = json::array();
    for (const auto& g : gens) {
      json table = json::array();
      for (const auto& [corner, word] : g.table.entries) {
        table.push_back({{"corner", {corner.from, corner.to}}, {"image", word_json(word)}});
      }
      out.push_back({{"loop", format_moves(g.loop)}, {"identity", g.identity}, {"table", table}});
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::cout << "loop " << i << (gens[i].identity ? " (identity)" : "") << '\n' << format_moves(gens[i].loop);
    for (const auto& [corner, word] : gens[i].table.entries) {
      std::cout << "  (" << corner.from << ',' << corner.to << ") -> " << format_word(word) << '\n';
    }
  }
  return 0;
}

int cmd_cover(const Options& opt, const std::string& cover_file, const std::string& base_file,
              const std::string& map_file, const std::string& word, Dart start) {
  const auto cover = load_graph(cover_file).graph();
  const auto base = load_graph(base_file).graph();
  const auto psi = parse_covering_map(load(map_file));
  const auto check = is_covering(psi, cover, base);
  json out{{"covering", check.covering}, {"degree", check.degree}};
  if (!check.covering) out["reason"] = check.reason;
  if (check.covering && !word.empty()) {
    out["lift"] = format_word(lift_word(psi, cover, base, parse_word(base, word), start));
  }
  if (opt.format == "structured") {
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "covering " << (check.covering ? "yes" : "no") << '\n';
    if (check.covering) {
      std::cout << "degree " << check.degree << '\n';
    } else {
      std::cout << "reason " << check.reason << '\n';
    }
    if (out.contains("lift")) std::cout << "lift " << out["lift"].get<std::string>() << '\n';
  }
  return check.covering ? 0 : kDomainExit;
}

int cmd_unicyclic(const Options& opt, const std::string& file) {
  const auto m = load_graph(file, false);
  const auto r = classify_unicyclic(m.graph());
  if (opt.format == "structured") {
    std::cout << json{{"kind", to_string(r.kind)}, {"cycle", r.cycle}, {"left", r.left}, {"right", r.right}}.dump(2)
              << '\n';
  } else {
    std::cout << to_string(r.kind) << '\n';
  }
  return 0;
}

void print_element(const Options& opt, const PPSL2Element& f) {
  if (opt.format == "structured") {
    json pieces = json::array();
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
      pieces.push_back({{"from", f.breakpoints().empty() ? "all" : to_string(f.breakpoints()[i])},
                        {"matrix", to_string(f.pieces()[i])}});
    }
    std::cout << pieces.dump(2) << '\n';
  } else {
    std::cout << format_ppsl2(f);
  }
}

int cmd_export(const Options& opt, const std::string& file) {
  emit_graph(opt, load_graph(file));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explore trivalent ribbon graphs, their flip groupoids and the Farey tree."};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "dot", "structured"}))
      ->capture_default_str();
  app.add_option("--budget-nodes", opt.budget_nodes, "Node budget for orbit search")->capture_default_str();
  app.add_option("--budget-depth", opt.budget_depth, "Depth budget for orbit search (negative: none)")
      ->capture_default_str();
  app.add_option("--moves", opt.moves, "Comma-separated subset of flip,shuffle,doe")->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

  std::string file;
  std::string second;
  std::string third;
  std::string word;
  int number = 0;
  int depth = 2;
  int max_radius = CircleMapOptions{}.max_radius;
  bool list = false;
  bool inverse_flag = false;
  std::string matrices;
  std::function<int()> action;

  auto* validate_cmd = app.add_subcommand("validate", "Check the ribbon-graph invariants of a document");
  validate_cmd->add_option("graph", file, "Document file or inline literal")->required();
  validate_cmd->callback([&] { action = [&] { return cmd_validate(opt, file); }; });

  auto* inv_cmd = app.add_subcommand("invariants", "Print V, E, F, genus, punctures and rank");
  inv_cmd->add_option("graph", file)->required();
  inv_cmd->callback([&] { action = [&] { return cmd_invariants(opt, file); }; });

  auto* flip_cmd = app.add_subcommand("flip", "Flip the edge of a dart");
  flip_cmd->add_option("graph", file)->required();
  flip_cmd->add_option("dart", number)->required();
  flip_cmd->callback([&] { action = [&] { return cmd_move(opt, file, Flip{number}); }; });

  auto* shuffle_cmd = app.add_subcommand("shuffle", "Reverse the rotation at a vertex (named by its least dart)");
  shuffle_cmd->add_option("graph", file)->required();
  shuffle_cmd->add_option("vertex", number)->required();
  shuffle_cmd->callback([&] { action = [&] { return cmd_move(opt, file, Shuffle{number}); }; });

  auto* doe_cmd = app.add_subcommand("doe", "Move the distinguished dart");
  doe_cmd->add_option("graph", file)->required();
  doe_cmd->add_option("kind", second)->required()->check(CLI::IsMember({"invert", "rotate"}));
  doe_cmd->callback([&] {
    action = [&] {
      return cmd_moves(opt, file, {DoeMove{second == "invert" ? DoeKind::invert : DoeKind::rotate}});
    };
  });

  auto* apply_cmd = app.add_subcommand("apply", "Apply a move script");
  apply_cmd->add_option("graph", file)->required();
  apply_cmd->add_option("script", second, "Move script file or inline literal")->required();
  apply_cmd->callback([&] { action = [&] { return cmd_moves(opt, file, parse_moves(load(second))); }; });

  auto* orbit_cmd = app.add_subcommand("orbit", "Breadth-first orbit under the selected moves");
  orbit_cmd->add_option("graph", file)->required();
  orbit_cmd->callback([&] { action = [&] { return cmd_orbit(opt, file); }; });

  auto* enum_cmd = app.add_subcommand("enumerate", "All connected trivalent marked types with V vertices");
  enum_cmd->add_option("vertices", number)->required();
  enum_cmd->add_flag("--list", list, "Print every canonical form");
  enum_cmd->callback([&] { action = [&] { return cmd_enumerate(opt, number, list); }; });

  auto* rel_cmd = app.add_subcommand("relations", "Certify involution, order four, squares and pentagons");
  rel_cmd->add_option("graph", file)->required();
  rel_cmd->callback([&] { action = [&] { return cmd_relations(opt, file); }; });

  auto* iso_cmd = app.add_subcommand("isotropy", "Loops at the basepoint and their automorphism tables");
  iso_cmd->add_option("graph", file)->required();
  iso_cmd->add_option("--depth", depth, "Search radius")->capture_default_str();
  iso_cmd->callback([&] { action = [&] { return cmd_isotropy(opt, file, depth); }; });

  Dart start = 0;
  auto* cover_cmd = app.add_subcommand("cover", "Check a covering map and optionally lift a word");
  cover_cmd->add_option("cover", file)->required();
  cover_cmd->add_option("base", second)->required();
  cover_cmd->add_option("map", third, "Document `psi <images>` or inline literal")->required();
  cover_cmd->add_option("--lift", word, "Word in the base, e.g. [+3 -6]");
  cover_cmd->add_option("--start", start, "Cover dart over the word's starting edge");
  cover_cmd->callback([&] {
    if (!word.empty() && start == 0) throw CLI::ValidationError("--lift", "requires --start");
    action = [&] { return cmd_cover(opt, file, second, third, word, start); };
  });

  auto* uni_cmd = app.add_subcommand("unicyclic", "Classify a graph with one cycle as chark or F-infinity-like");
  uni_cmd->add_option("graph", file)->required();
  uni_cmd->callback([&] { action = [&] { return cmd_unicyclic(opt, file); }; });

  auto* export_cmd = app.add_subcommand("export", "Re-emit a document in the chosen format");
  export_cmd->add_option("graph", file)->required();
  export_cmd->callback([&] { action = [&] { return cmd_export(opt, file); }; });

  auto* farey = app.add_subcommand("farey", "Farey tree and piecewise-PSL2(Z) maps");
  farey->require_subcommand(1);
  auto* eval_cmd = farey->add_subcommand("eval", "Evaluate an element at a rational");
  eval_cmd->add_option("element", file)->required();
  eval_cmd->add_option("point", second)->required();
  eval_cmd->callback([&] {
    action = [&] {
      std::cout << to_string(parse_ppsl2(load(file))(parse_ext_rational(second))) << '\n';
      return 0;
    };
  });
  auto* compose_cmd = farey->add_subcommand("compose", "Print f o g");
  compose_cmd->add_option("f", file)->required();
  compose_cmd->add_option("g", second)->required();
  compose_cmd->callback([&] {
    action = [&] {
      print_element(opt, ppsl2_compose(parse_ppsl2(load(file)), parse_ppsl2(load(second))));
      return 0;
    };
  });
  auto* inverse_cmd = farey->add_subcommand("inverse", "Print the inverse element");
  inverse_cmd->add_option("element", file)->required();
  inverse_cmd->callback([&] {
    action = [&] {
      print_element(opt, ppsl2_inverse(parse_ppsl2(load(file))));
      return 0;
    };
  });
  auto* qmark_cmd = farey->add_subcommand("qmark", "Minkowski question mark function");
  qmark_cmd->add_option("x", second)->required();
  qmark_cmd->add_flag("--inverse", inverse_flag, "Apply the inverse to a dyadic rational");
  qmark_cmd->callback([&] {
    action = [&] {
      const auto x = parse_ext_rational(second);
      std::cout << to_string(inverse_flag ? question_mark_inverse(x) : question_mark(x)) << '\n';
      return 0;
    };
  });
  auto* flipmap_cmd = farey->add_subcommand("flipmap", "Circle map of a flip sequence on the Farey tree");
  flipmap_cmd->add_option("darts", matrices, "Darts as matrices [[a,b],[c,d]] in one argument, flipped in order");
  flipmap_cmd->add_option("--max-radius", max_radius, "Ball radius bound")->capture_default_str();
  flipmap_cmd->callback([&] {
    action = [&] {
      std::vector<FareyDart> darts;
      static const std::regex matrix(R"(\[\s*\[[^\]]*\]\s*,\s*\[[^\]]*\]\s*\])");
      auto last = matrices.cbegin();
      for (std::sregex_iterator it(matrices.begin(), matrices.end(), matrix), end; it != end; ++it) {
        if (std::string(last, (*it)[0].first).find_first_not_of(" ;,") != std::string::npos) {
          throw DomainError("bad dart list: " + matrices);
        }
        darts.push_back(parse_matrix(it->str()));
        last = (*it)[0].second;
      }
      if (std::string(last, matrices.cend()).find_first_not_of(" ;,") != std::string::npos) {
        throw DomainError("bad dart list: " + matrices);
      }
      print_element(opt, flip_sequence_to_circle_map(darts, CircleMapOptions{max_radius}));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageExit;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomainExit;
  }
}
