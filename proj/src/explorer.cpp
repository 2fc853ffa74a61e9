#include "ribbon/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace ribbon {

namespace {

// Partial rooted map in canonical labelling; 0 marks an undefined image.
struct Partial {
  int total = 0;
  int used = 1;
  std::vector<int> sigma;
  std::vector<int> iota;
};

class Generator {
 public:
  explicit Generator(std::function<void(const Partial&)> emit) : emit_(std::move(emit)) {}

  // Processes label k: closes its vertex, then its edge, as the canonical
  // breadth-first labelling would, trying every consistent choice.
  void run(Partial& p, int k, int stop_at) {
    if (k == stop_at || k > p.total) {
      if (k > p.total || stop_at <= p.total) emit_(p);
      return;
    }
    if (k > p.used) return;  // queue ran dry: disconnected
    if (p.sigma[k] == 0) {
      for (int s1 : candidates(p, k, 0, true)) {
        const bool new1 = s1 > p.used;
        if (new1) ++p.used;
        for (int s2 : candidates(p, k, s1, true)) {
          const bool new2 = s2 > p.used;
          if (new2) ++p.used;
          p.sigma[k] = s1;
          p.sigma[s1] = s2;
          p.sigma[s2] = k;
          close_edge(p, k, stop_at);
          p.sigma[k] = p.sigma[s1] = p.sigma[s2] = 0;
          if (new2) --p.used;
        }
        if (new1) --p.used;
      }
    } else {
      close_edge(p, k, stop_at);
    }
  }

 private:
  void close_edge(Partial& p, int k, int stop_at) {
    if (p.iota[k] != 0) {
      run(p, k + 1, stop_at);
      return;
    }
    for (int j : candidates(p, k, 0, false)) {
      const bool fresh = j > p.used;
      if (fresh) ++p.used;
      p.iota[k] = j;
      p.iota[j] = k;
      run(p, k + 1, stop_at);
      p.iota[k] = p.iota[j] = 0;
      if (fresh) --p.used;
    }
  }

  static std::vector<int> candidates(const Partial& p, int k, int exclude, bool rotation) {
    std::vector<int> out;
    for (int j = k + 1; j <= p.used; ++j) {
      if (j == exclude) continue;
      if ((rotation ? p.sigma[j] : p.iota[j]) == 0) out.push_back(j);
    }
    if (p.used < p.total) out.push_back(p.used + 1);
    return out;
  }

  std::function<void(const Partial&)> emit_;
};

CanonicalForm to_form(const Partial& p) {
  CanonicalForm form;
  for (int l = 1; l <= p.total; ++l) {
    form.code.push_back(p.sigma[l]);
    form.code.push_back(p.iota[l]);
  }
  return form;
}

std::vector<CanonicalForm> generate(int vertices, int threads) {
  Partial root;
  root.total = 3 * vertices;
  root.sigma.assign(static_cast<std::size_t>(root.total) + 1, 0);
  root.iota.assign(static_cast<std::size_t>(root.total) + 1, 0);

  const int split = std::min(3, root.total + 1);
  std::vector<Partial> shards;
  Generator(([&](const Partial& p) { shards.push_back(p); })).run(root, 1, split);

  std::vector<std::vector<CanonicalForm>> found(shards.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < shards.size();) {
      Partial p = shards[i];
      Generator([&](const Partial& full) { found[i].push_back(to_form(full)); }).run(p, split, -1);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<CanonicalForm> forms;
  for (auto& part : found) forms.insert(forms.end(), part.begin(), part.end());
  std::sort(forms.begin(), forms.end());
  return forms;
}

std::filesystem::path cache_file(int vertices) {
  const char* dir = std::getenv(kCacheDirEnv);
  if (dir == nullptr || *dir == '\0') return {};
  return std::filesystem::path(dir) / ("types-v" + std::to_string(vertices) + ".txt");
}

std::optional<std::vector<CanonicalForm>> load_cache(const std::filesystem::path& file, int vertices) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<CanonicalForm> forms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream words(line);
    CanonicalForm form;
    for (int x; words >> x;) form.code.push_back(x);
    if (form.num_darts() != 3 * vertices || form.code.size() % 2 != 0) return std::nullopt;
    try {
      if (canonical_form(from_canonical(form)) != form) return std::nullopt;
    } catch (const Error&) {
      return std::nullopt;
    }
    forms.push_back(std::move(form));
  }
  if (!std::is_sorted(forms.begin(), forms.end())) return std::nullopt;
  return forms;
}

void store_cache(const std::filesystem::path& file, const std::vector<CanonicalForm>& forms) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    for (const auto& form : forms) {
      for (std::size_t i = 0; i < form.code.size(); ++i) out << (i ? " " : "") << form.code[i];
      out << '\n';
    }
  }
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

Enumeration enumerate_types(int vertices, int threads) {
  if (vertices <= 0 || vertices % 2 != 0) {
    throw DomainError("vertex count must be positive and even (2E = 3V); got " + std::to_string(vertices));
  }
  if (vertices > kEnumerateMaxVertices) {
    throw DomainError("vertex count " + std::to_string(vertices) + " exceeds the enumeration bound " +
                      std::to_string(kEnumerateMaxVertices));
  }
  Enumeration out;
  out.vertices = vertices;
  const auto file = cache_file(vertices);
  if (auto cached = file.empty() ? std::nullopt : load_cache(file, vertices)) {
    out.forms = std::move(*cached);
  } else {
    out.forms = generate(vertices, std::max(1, threads));
    if (!file.empty()) store_cache(file, out.forms);
  }
  std::map<std::pair<int, int>, std::vector<CanonicalForm>> grouped;
  for (const auto& form : out.forms) {
    const auto inv = invariants(from_canonical(form).graph());
    grouped[{inv.genus, inv.punctures}].push_back(form);
  }
  for (auto& [key, forms] : grouped) out.classes.push_back({key.first, key.second, std::move(forms)});
  return out;
}

MoveSet parse_move_set(const std::string& text) {
  MoveSet set{false, false, false};
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item == "flip" || item == "flips") {
      set.flips = true;
    } else if (item == "shuffle" || item == "shuffles") {
      set.shuffles = true;
    } else if (item == "doe" || item == "does") {
      set.does = true;
    } else if (!item.empty()) {
      throw DomainError("unknown move kind '" + item + "'");
    }
  }
  return set;
}

std::vector<Move> available_moves(const MarkedGraph& marked, const MoveSet& moves) {
  const auto& g = marked.graph();
  std::vector<Move> out;
  if (moves.flips) {
    for (Dart d = 1; d <= g.num_darts(); ++d) {
      if (g.edge_of(d) == d && can_flip(g, d)) out.emplace_back(Flip{d});
    }
  }
  if (moves.shuffles) {
    for (const auto& vertex : g.sigma_cycles()) out.emplace_back(Shuffle{vertex.front()});
  }
  if (moves.does) {
    out.emplace_back(DoeMove{DoeKind::invert});
    out.emplace_back(DoeMove{DoeKind::rotate});
  }
  return out;
}

OrbitGraph orbit(const MarkedGraph& start, const MoveSet& moves, const OrbitBudget& budget, int threads) {
  OrbitGraph out;
  out.basepoint = canonical_form(start);
  out.nodes.push_back(out.basepoint);
  out.depth.push_back(0);
  std::unordered_map<CanonicalForm, std::size_t, CanonicalFormHash> index{{out.basepoint, 0}};

  using Successors = std::vector<std::pair<Move, CanonicalForm>>;
  std::vector<std::size_t> frontier{0};
  for (int level = 0; !frontier.empty(); ++level) {
    if (budget.max_depth >= 0 && level >= budget.max_depth) {
      out.complete = false;
      out.frontier = frontier.size();
      break;
    }
    std::vector<Successors> succ(frontier.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < frontier.size();) {
        const MarkedGraph g = from_canonical(out.nodes[frontier[i]]);
        for (const auto& move : available_moves(g, moves)) {
          succ[i].emplace_back(move, canonical_form(apply_move(g, move)));
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads && static_cast<std::size_t>(t) < frontier.size(); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::size_t> upcoming;
    bool exhausted = false;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (auto& [move, form] : succ[i]) {
        auto it = index.find(form);
        if (it == index.end()) {
          if (out.nodes.size() >= budget.max_nodes) {
            exhausted = true;
            continue;
          }
          it = index.emplace(form, out.nodes.size()).first;
          out.nodes.push_back(std::move(form));
          out.depth.push_back(level + 1);
          upcoming.push_back(it->second);
        }
        out.arcs.push_back({frontier[i], it->second, move});
      }
    }
    frontier = std::move(upcoming);
    if (exhausted) {
      out.complete = false;
      out.frontier = frontier.size() + 1;
      break;
    }
  }

  std::sort(out.arcs.begin(), out.arcs.end(), [](const OrbitArc& l, const OrbitArc& r) {
    return std::tuple(l.from, l.to, format_move(l.move)) < std::tuple(r.from, r.to, format_move(r.move));
  });
  return out;
}

bool RelationReport::all_hold() const {
  return std::all_of(flips.begin(), flips.end(), [](const FlipCheck& c) { return c.involution && c.order_four; }) &&
         std::all_of(squares.begin(), squares.end(), [](const CommutingCheck& c) { return c.commutes; }) &&
         std::all_of(pentagons.begin(), pentagons.end(),
                     [](const PentagonCheck& c) { return !c.embedded || c.witnesses.size() == 2; });
}

bool spans_embedded_pentagon(const RibbonGraph& graph, Dart first, Dart second) {
  if (!can_flip(graph, first) || !can_flip(graph, second)) return false;
  const Dart ends[] = {graph.vertex_of(first), graph.vertex_of(graph.iota(first))};
  const Dart v = graph.vertex_of(second), w = graph.vertex_of(graph.iota(second));
  if (std::none_of(std::begin(ends), std::end(ends), [&](Dart x) { return x == v || x == w; })) return false;
  const std::vector<Dart> inner{first, graph.iota(first), second, graph.iota(second)};
  std::vector<Dart> vertices;
  for (Dart d : inner) vertices.push_back(graph.vertex_of(d));
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() != 3) return false;
  std::vector<Dart> boundary;
  for (Dart v : vertices) {
    for (Dart d : graph.vertex_darts(v)) {
      if (std::find(inner.begin(), inner.end(), d) == inner.end()) boundary.push_back(graph.edge_of(d));
    }
  }
  std::sort(boundary.begin(), boundary.end());
  return boundary.size() == 5 && std::adjacent_find(boundary.begin(), boundary.end()) == boundary.end();
}

std::vector<MoveSequence> pentagon_witnesses(const MarkedGraph& marked, Dart first, Dart second) {
  const auto target = unmarked_canonical_form(marked.graph());
  std::vector<MoveSequence> out;
  for (Dart lead : {first, second}) {
    const Dart other = lead == first ? second : first;
    RibbonGraph g = marked.graph();
    MoveSequence seq;
    bool ok = true;
    for (int step = 0; step < 5 && ok; ++step) {
      const Dart d = step % 2 == 0 ? lead : other;
      if (!can_flip(g, d)) {
        ok = false;
        break;
      }
      g = flip(g, d);
      seq.emplace_back(Flip{d});
    }
    if (ok && unmarked_canonical_form(g) == target) out.push_back(std::move(seq));
  }
  return out;
}

RelationReport certify_relations(const MarkedGraph& marked) {
  const auto& g = marked.graph();
  require_valid_connected(g);
  RelationReport report;
  std::vector<Dart> flippable;
  for (const auto& edge : g.iota_cycles()) {
    const Dart e = edge.front();
    if (!can_flip(g, e)) {
      report.skipped_loops.push_back(e);
      continue;
    }
    flippable.push_back(e);
    const RibbonGraph twice = flip(flip(g, e), e);
    const Dart f2 = g.iota(e);
    auto swap = [&](Dart x) { return x == e ? f2 : (x == f2 ? e : x); };
    bool involution = true;
    for (Dart x = 1; x <= g.num_darts(); ++x) {
      if (twice.sigma(x) != swap(g.sigma(swap(x)))) involution = false;
    }
    report.flips.push_back({e, involution, flip(flip(twice, e), e) == g});
  }
  for (std::size_t i = 0; i < flippable.size(); ++i) {
    for (std::size_t j = i + 1; j < flippable.size(); ++j) {
      const Dart e = flippable[i];
      const Dart f = flippable[j];
      const std::vector<Dart> ve{g.vertex_of(e), g.vertex_of(g.iota(e))};
      const std::vector<Dart> vf{g.vertex_of(f), g.vertex_of(g.iota(f))};
      int shared = 0;
      for (Dart a : ve) shared += static_cast<int>(std::count(vf.begin(), vf.end(), a));
      if (shared == 0) {
        report.squares.push_back({e, f, flip(flip(g, e), f) == flip(flip(g, f), e)});
      } else if (shared == 1) {
        report.pentagons.push_back({e, f, spans_embedded_pentagon(g, e, f), pentagon_witnesses(marked, e, f)});
      }
    }
  }
  return report;
}

MoveSequence transport_moves(const MoveSequence& moves, const MarkedGraph& source, const MarkedGraph& target,
                             const DartMap& map) {
  MoveSequence out;
  MarkedGraph s = source;
  MarkedGraph t = target;
  for (const auto& move : moves) {
    Move image = move;
    if (const auto* f = std::get_if<Flip>(&move)) {
      image = Flip{map[static_cast<std::size_t>(f->dart)]};
    } else if (const auto* sh = std::get_if<Shuffle>(&move)) {
      image = Shuffle{t.graph().vertex_of(map[static_cast<std::size_t>(sh->vertex)])};
    }
    s = apply_move(s, move);
    t = apply_move(t, image);
    out.push_back(image);
  }
  return out;
}

std::vector<IsotropyGenerator> isotropy_generators(const MarkedGraph& marked, int depth) {
  if (depth < 0 || depth > kIsotropyMaxDepth) {
    throw DomainError("isotropy depth must lie in [0, " + std::to_string(kIsotropyMaxDepth) + "]");
  }
  require_valid_connected(marked.graph());
  std::vector<IsotropyGenerator> out;
  out.push_back({{}, loop_automorphism(marked, {}), true});

  struct Node {
    MarkedGraph graph;
    MoveSequence path;
    int depth;
  };
  std::vector<Node> nodes{{marked, {}, 0}};
  std::unordered_map<CanonicalForm, std::size_t, CanonicalFormHash> index{{canonical_form(marked), 0}};
  const MoveSet moves{true, false, true};
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (nodes[u].depth >= depth) continue;
    for (const auto& move : available_moves(nodes[u].graph, moves)) {
      MarkedGraph reached = apply_move(nodes[u].graph, move);
      const auto form = canonical_form(reached);
      auto it = index.find(form);
      if (it == index.end()) {
        index.emplace(form, nodes.size());
        MoveSequence path = nodes[u].path;
        path.push_back(move);
        nodes.push_back({std::move(reached), std::move(path), nodes[u].depth + 1});
        continue;
      }
      const Node& w = nodes[it->second];
      const auto iso = marked_isomorphism(w.graph, reached);
      MoveSequence loop = nodes[u].path;
      loop.push_back(move);
      const auto back = transport_moves(invert_sequence(w.path, marked), w.graph, reached, *iso);
      loop.insert(loop.end(), back.begin(), back.end());
      auto table = loop_automorphism(marked, loop);
      if (is_identity(table)) continue;
      const bool seen = std::any_of(out.begin(), out.end(), [&](const IsotropyGenerator& g) { return g.table == table; });
      if (seen || is_trivial_class(marked.graph(), table)) continue;
      out.push_back({std::move(loop), std::move(table), false});
    }
  }
  return out;
}

}  // namespace ribbon
