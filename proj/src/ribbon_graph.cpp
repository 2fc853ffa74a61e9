#include "ribbon/ribbon_graph.hpp"

#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace ribbon {

namespace {

std::string parse_message(int line, const std::string& field, const std::string& message) {
  std::ostringstream out;
  out << "line " << line;
  if (!field.empty()) out << " (" << field << ")";
  out << ": " << message;
  return out.str();
}

DartMap invert(const DartMap& perm) {
  DartMap inv(perm.size(), 0);
  for (std::size_t d = 1; d < perm.size(); ++d) inv[static_cast<std::size_t>(perm[d])] = static_cast<Dart>(d);
  return inv;
}

void require_bijection(const DartMap& perm, const char* name) {
  const int n = static_cast<int>(perm.size()) - 1;
  std::vector<bool> hit(perm.size(), false);
  for (int d = 1; d <= n; ++d) {
    const Dart image = perm[static_cast<std::size_t>(d)];
    if (image < 1 || image > n) {
      throw ParseError(0, name, "image of dart " + std::to_string(d) + " out of range");
    }
    if (hit[static_cast<std::size_t>(image)]) {
      throw ParseError(0, name, "not a bijection: dart " + std::to_string(image) + " hit twice");
    }
    hit[static_cast<std::size_t>(image)] = true;
  }
}

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& message)
    : Error(parse_message(line, field, message)), line_(line), field_(std::move(field)), detail_(message) {}

RibbonGraph::RibbonGraph(DartMap sigma, DartMap iota)
    : sigma_(std::move(sigma)), iota_(std::move(iota)) {
  if (sigma_.size() != iota_.size()) throw ParseError(0, "darts", "sigma and iota sizes differ");
  sigma_[0] = 0;
  iota_[0] = 0;
  require_bijection(sigma_, "sigma");
  require_bijection(iota_, "iota");
  sigma_inv_ = invert(sigma_);
}

RibbonGraph RibbonGraph::from_images(const std::vector<Dart>& sigma_images,
                                     const std::vector<Dart>& iota_images) {
  DartMap sigma{0};
  DartMap iota{0};
  sigma.insert(sigma.end(), sigma_images.begin(), sigma_images.end());
  iota.insert(iota.end(), iota_images.begin(), iota_images.end());
  return RibbonGraph(std::move(sigma), std::move(iota));
}

RibbonGraph RibbonGraph::from_cycles(int darts, const Cycles& sigma, const Cycles& iota) {
  if (darts < 0) throw ParseError(0, "darts", "negative dart count");
  auto build = [darts](const Cycles& cycles, const char* name) {
    DartMap perm(static_cast<std::size_t>(darts) + 1, 0);
    std::vector<bool> seen(perm.size(), false);
    for (const auto& cycle : cycles) {
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Dart d = cycle[i];
        if (d < 1 || d > darts) {
          throw ParseError(0, name, "dart " + std::to_string(d) + " out of range");
        }
        if (seen[static_cast<std::size_t>(d)]) {
          throw ParseError(0, name, "not a bijection: dart " + std::to_string(d) + " repeated");
        }
        seen[static_cast<std::size_t>(d)] = true;
        perm[static_cast<std::size_t>(d)] = cycle[(i + 1) % cycle.size()];
      }
    }
    for (Dart d = 1; d <= darts; ++d) {
      if (!seen[static_cast<std::size_t>(d)]) perm[static_cast<std::size_t>(d)] = d;
    }
    return perm;
  };
  return RibbonGraph(build(sigma, "sigma"), build(iota, "iota"));
}

Dart RibbonGraph::vertex_of(Dart d) const {
  Dart best = d;
  for (Dart x = sigma_[d]; x != d; x = sigma_[x]) best = std::min(best, x);
  return best;
}

std::vector<Dart> RibbonGraph::vertex_darts(Dart d) const {
  std::vector<Dart> out{d};
  for (Dart x = sigma_[d]; x != d; x = sigma_[x]) out.push_back(x);
  return out;
}

Cycles orbits(const DartMap& perm) {
  Cycles out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t d = 1; d < perm.size(); ++d) {
    if (seen[d]) continue;
    Cycle cycle;
    for (Dart x = static_cast<Dart>(d); !seen[static_cast<std::size_t>(x)]; x = perm[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Cycles RibbonGraph::sigma_cycles() const { return orbits(sigma_); }
Cycles RibbonGraph::iota_cycles() const { return orbits(iota_); }

Cycles RibbonGraph::lambda_cycles() const {
  DartMap lam(sigma_.size(), 0);
  for (Dart d = 1; d <= num_darts(); ++d) lam[static_cast<std::size_t>(d)] = lambda(d);
  return orbits(lam);
}

RibbonGraph RibbonGraph::with_sigma(DartMap sigma) const {
  if (sigma.size() != sigma_.size()) throw Error("rotation has the wrong number of darts");
  return RibbonGraph(std::move(sigma), iota_);
}

bool RibbonGraph::connected() const {
  const int n = num_darts();
  if (n == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  std::vector<Dart> stack{1};
  seen[1] = true;
  int count = 1;
  while (!stack.empty()) {
    const Dart d = stack.back();
    stack.pop_back();
    for (Dart next : {sigma_[d], sigma_inv_[d], iota_[d]}) {
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = true;
        ++count;
        stack.push_back(next);
      }
    }
  }
  return count == n;
}

ValidationReport validate(const RibbonGraph& graph) {
  ValidationReport report;
  const int n = graph.num_darts();
  if (n == 0) {
    report.issues.push_back({"graph must be nonempty", 0});
    return report;
  }
  if (n % 2 != 0) report.issues.push_back({"dart count odd", n});
  for (Dart d = 1; d <= n; ++d) {
    if (graph.iota(d) == d) {
      report.issues.push_back({"iota not fixed-point-free", d});
      break;
    }
  }
  for (Dart d = 1; d <= n; ++d) {
    if (graph.iota(graph.iota(d)) != d) {
      report.issues.push_back({"iota not an involution", d});
      break;
    }
  }
  for (const auto& cycle : graph.sigma_cycles()) {
    if (cycle.size() != 3) {
      report.issues.push_back({"vertex of degree ≠ 3", cycle.front()});
      break;
    }
  }
  report.connected = graph.connected();
  return report;
}

void require_valid(const RibbonGraph& graph) {
  const auto report = validate(graph);
  if (!report.ok()) {
    const auto& issue = report.issues.front();
    std::string message = "invalid ribbon graph: " + issue.invariant;
    if (issue.witness != 0) message += " (dart " + std::to_string(issue.witness) + ")";
    throw DomainError(message);
  }
}

void require_valid_connected(const RibbonGraph& graph) {
  require_valid(graph);
  if (!graph.connected()) throw DomainError("invalid ribbon graph: graph is disconnected");
}

Invariants invariants(const RibbonGraph& graph) {
  require_valid_connected(graph);
  Invariants inv;
  inv.vertices = static_cast<int>(graph.sigma_cycles().size());
  inv.edges = graph.num_darts() / 2;
  inv.faces = static_cast<int>(graph.lambda_cycles().size());
  const int euler = inv.vertices - inv.edges + inv.faces;
  inv.genus = (2 - euler) / 2;
  inv.punctures = inv.faces;
  inv.rank = inv.edges - inv.vertices + 1;
  return inv;
}

std::vector<Puncture> punctures(const RibbonGraph& graph) {
  require_valid(graph);
  std::vector<Puncture> out;
  for (auto& cycle : graph.lambda_cycles()) {
    Puncture p;
    p.cycle = std::move(cycle);
    for (Dart d : p.cycle) p.edges.push_back(graph.edge_of(d));
    out.push_back(std::move(p));
  }
  return out;
}

MarkedGraph::MarkedGraph(RibbonGraph graph, Dart doe) : graph_(std::move(graph)), doe_(doe) {
  if (graph_.empty()) throw DomainError("graph must be nonempty");
  if (!graph_.contains(doe_)) throw DomainError("doe not a dart: " + std::to_string(doe_));
}

std::size_t CanonicalFormHash::operator()(const CanonicalForm& form) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : form.code) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

DartMap canonical_labels(const RibbonGraph& graph, Dart doe) {
  const int n = graph.num_darts();
  DartMap label(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Dart> order;
  order.reserve(static_cast<std::size_t>(n));
  label[static_cast<std::size_t>(doe)] = 1;
  order.push_back(doe);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Dart d = order[head];
    const Dart s1 = graph.sigma(d);
    for (Dart next : {s1, graph.sigma(s1), graph.iota(d)}) {
      if (label[static_cast<std::size_t>(next)] == 0) {
        order.push_back(next);
        label[static_cast<std::size_t>(next)] = static_cast<Dart>(order.size());
      }
    }
  }
  if (static_cast<int>(order.size()) != n) throw DomainError("invalid ribbon graph: graph is disconnected");
  return label;
}

namespace {

CanonicalForm encode(const RibbonGraph& graph, const DartMap& label) {
  const int n = graph.num_darts();
  DartMap dart_of(label.size(), 0);
  for (Dart d = 1; d <= n; ++d) dart_of[static_cast<std::size_t>(label[static_cast<std::size_t>(d)])] = d;
  CanonicalForm form;
  form.code.reserve(2 * static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    const Dart d = dart_of[static_cast<std::size_t>(l)];
    form.code.push_back(label[static_cast<std::size_t>(graph.sigma(d))]);
    form.code.push_back(label[static_cast<std::size_t>(graph.iota(d))]);
  }
  return form;
}

}  // namespace

CanonicalForm canonical_form(const MarkedGraph& marked) {
  require_valid_connected(marked.graph());
  return encode(marked.graph(), canonical_labels(marked.graph(), marked.doe()));
}

CanonicalForm unmarked_canonical_form(const RibbonGraph& graph) {
  require_valid_connected(graph);
  CanonicalForm best;
  for (Dart d = 1; d <= graph.num_darts(); ++d) {
    auto form = encode(graph, canonical_labels(graph, d));
    if (d == 1 || form < best) best = std::move(form);
  }
  return best;
}

MarkedGraph from_canonical(const CanonicalForm& form) {
  if (form.code.empty() || form.code.size() % 2 != 0) throw DomainError("malformed canonical form");
  std::vector<Dart> sigma;
  std::vector<Dart> iota;
  for (std::size_t i = 0; i < form.code.size(); i += 2) {
    sigma.push_back(form.code[i]);
    iota.push_back(form.code[i + 1]);
  }
  return MarkedGraph(RibbonGraph::from_images(sigma, iota), 1);
}

std::optional<DartMap> marked_isomorphism(const MarkedGraph& from, const MarkedGraph& to) {
  require_valid_connected(from.graph());
  require_valid_connected(to.graph());
  if (from.graph().num_darts() != to.graph().num_darts()) return std::nullopt;
  const DartMap from_labels = canonical_labels(from.graph(), from.doe());
  const DartMap to_labels = canonical_labels(to.graph(), to.doe());
  if (encode(from.graph(), from_labels) != encode(to.graph(), to_labels)) return std::nullopt;
  DartMap to_dart(to_labels.size(), 0);
  for (std::size_t d = 1; d < to_labels.size(); ++d) to_dart[static_cast<std::size_t>(to_labels[d])] = static_cast<Dart>(d);
  DartMap map(from_labels.size(), 0);
  for (std::size_t d = 1; d < from_labels.size(); ++d) map[d] = to_dart[static_cast<std::size_t>(from_labels[d])];
  return map;
}

bool are_isomorphic(const MarkedGraph& lhs, const MarkedGraph& rhs) {
  return canonical_form(lhs) == canonical_form(rhs);
}

std::vector<CanonicalForm> doe_orbit(const MarkedGraph& marked) {
  require_valid_connected(marked.graph());
  const auto& g = marked.graph();
  // Closure of the doe under iota and sigma.
  std::vector<bool> seen(static_cast<std::size_t>(g.num_darts()) + 1, false);
  std::deque<Dart> queue{marked.doe()};
  seen[static_cast<std::size_t>(marked.doe())] = true;
  std::set<CanonicalForm> forms;
  while (!queue.empty()) {
    const Dart d = queue.front();
    queue.pop_front();
    forms.insert(encode(g, canonical_labels(g, d)));
    for (Dart next : {g.iota(d), g.sigma(d)}) {
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }
  return {forms.begin(), forms.end()};
}

std::vector<DartMap> automorphisms(const RibbonGraph& graph) {
  require_valid_connected(graph);
  const MarkedGraph base(graph, 1);
  std::vector<DartMap> out;
  for (Dart d = 1; d <= graph.num_darts(); ++d) {
    if (auto map = marked_isomorphism(base, MarkedGraph(graph, d))) out.push_back(std::move(*map));
  }
  return out;
}

RibbonGraph reverse_rotations(const RibbonGraph& graph, const std::vector<Dart>& vertices) {
  DartMap sigma = graph.sigma_map();
  std::set<Dart> done;
  for (Dart v : vertices) {
    if (!graph.contains(v)) throw DomainError("unknown vertex: " + std::to_string(v));
    const Dart key = graph.vertex_of(v);
    if (!done.insert(key).second) continue;
    for (Dart d : graph.vertex_darts(v)) sigma[static_cast<std::size_t>(d)] = graph.sigma_inv(d);
  }
  return graph.with_sigma(std::move(sigma));
}

UnderlyingGraph forget_ribbon(const RibbonGraph& graph) {
  require_valid_connected(graph);
  const auto vertex_cycles = graph.sigma_cycles();
  const int v = static_cast<int>(vertex_cycles.size());
  if (v > kForgetRibbonMaxVertices) {
    throw DomainError("forget_ribbon supports at most " + std::to_string(kForgetRibbonMaxVertices) +
                      " vertices");
  }
  // For trivalent graphs the rotation systems on the underlying multigraph are
  // exactly the 2^V per-vertex reversals, so the least ribbon type over all of
  // them is a complete invariant of the multigraph.
  CanonicalForm best;
  bool have = false;
  for (unsigned mask = 0; mask < (1u << v); ++mask) {
    std::vector<Dart> chosen;
    for (int i = 0; i < v; ++i) {
      if (mask & (1u << i)) chosen.push_back(vertex_cycles[static_cast<std::size_t>(i)].front());
    }
    auto form = unmarked_canonical_form(reverse_rotations(graph, chosen));
    if (!have || form < best) {
      best = std::move(form);
      have = true;
    }
  }
  const MarkedGraph rep = from_canonical(best);
  const auto& g = rep.graph();
  std::vector<int> vertex_index(static_cast<std::size_t>(g.num_darts()) + 1, -1);
  int next = 0;
  for (Dart d = 1; d <= g.num_darts(); ++d) {
    if (vertex_index[static_cast<std::size_t>(d)] >= 0) continue;
    for (Dart x : g.vertex_darts(d)) vertex_index[static_cast<std::size_t>(x)] = next;
    ++next;
  }
  UnderlyingGraph out;
  out.vertices = next;
  for (Dart d = 1; d <= g.num_darts(); ++d) {
    if (d > g.iota(d)) continue;
    int a = vertex_index[static_cast<std::size_t>(d)];
    int b = vertex_index[static_cast<std::size_t>(g.iota(d))];
    out.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace ribbon
