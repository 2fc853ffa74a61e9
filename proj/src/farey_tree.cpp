#include "ribbon/farey_tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

namespace ribbon {

FareyNeighbors farey_neighbors(const FareyDart& g) {
  const FareyDart s1 = farey_sigma(g);
  return {s1, farey_sigma(s1), farey_iota(g)};
}

FareyDart farey_edge(const FareyDart& g) { return std::min(g, farey_iota(g)); }

FareyDart farey_vertex(const FareyDart& g) {
  const FareyDart s1 = farey_sigma(g);
  return std::min({g, s1, farey_sigma(s1)});
}

ExtRational puncture_rational(const FareyDart& g) { return moebius(g, ExtRational::infinity()); }

FareyBall build_farey_ball(int radius) {
  if (radius < 0) throw DomainError("negative ball radius");
  FareyBall ball;
  ball.radius = radius;
  const FareyDart root = farey_vertex(FareyDart::identity());
  ball.depth[root] = 0;
  ball.parent[root] = root;
  ball.sphere_sizes.push_back(1);
  std::vector<FareyDart> frontier{root};
  for (int r = 1; r <= radius; ++r) {
    std::vector<FareyDart> next;
    for (const auto& v : frontier) {
      FareyDart d = v;
      for (int k = 0; k < 3; ++k, d = farey_sigma(d)) {
        const FareyDart w = farey_vertex(farey_iota(d));
        if (w == ball.parent[v]) continue;
        if (ball.depth.count(w)) {
          ball.acyclic = false;
          continue;
        }
        ball.depth[w] = r;
        ball.parent[w] = v;
        next.push_back(w);
      }
    }
    ball.sphere_sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return ball;
}

std::shared_ptr<const FareyBall> farey_ball(int radius) {
  static std::shared_mutex mutex;
  static std::map<int, std::shared_ptr<const FareyBall>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(radius); it != cache.end()) return it->second;
  }
  auto ball = std::make_shared<const FareyBall>(build_farey_ball(radius));
  std::unique_lock lock(mutex);
  return cache.emplace(radius, std::move(ball)).first->second;
}

FareyDart TreePatch::sigma(const FareyDart& d) const {
  if (auto it = overrides_.find(d); it != overrides_.end()) return it->second;
  return farey_sigma(d);
}

void TreePatch::flip(const FareyDart& f1) {
  const FareyDart f2 = iota(f1);
  const FareyDart a = sigma(f1);
  const FareyDart b = sigma(a);
  const FareyDart d = sigma(f2);
  const FareyDart c = sigma(d);
  if (f2 == a || f2 == b) throw DomainError("unflippable loop edge in patched tree");
  const std::pair<FareyDart, FareyDart> updates[] = {{f1, b}, {b, d}, {d, f1}, {f2, c}, {c, a}, {a, f2}};
  for (const auto& [from, to] : updates) {
    if (to == farey_sigma(from)) {
      overrides_.erase(from);
    } else {
      overrides_[from] = to;
    }
  }
}

std::vector<FareyDart> TreePatch::support() const {
  std::vector<FareyDart> out;
  for (const auto& [d, _] : overrides_) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

PPSL2Element circle_map(const TreePatch& patch, const CircleMapOptions& options) {
  if (patch.empty()) return PPSL2Element();
  const auto support = patch.support();

  // Smallest ball holding every patched vertex.
  std::shared_ptr<const FareyBall> ball;
  for (int r = 1; r <= options.max_radius; ++r) {
    auto candidate = farey_ball(r);
    const bool covers = std::all_of(support.begin(), support.end(), [&](const FareyDart& d) {
      return candidate->depth.count(farey_vertex(d)) > 0;
    });
    if (covers) {
      ball = std::move(candidate);
      break;
    }
  }
  if (!ball) throw DomainError("patch support exceeds the configured radius bound");

  // Core: the subtree spanned by the root and the patched vertices.
  std::unordered_set<FareyDart, PSL2MatHash> core;
  for (const auto& d : support) {
    for (FareyDart v = farey_vertex(d); core.insert(v).second;) {
      const FareyDart up = ball->parent.at(v);
      if (up == v) break;
      v = up;
    }
  }
  core.insert(farey_vertex(FareyDart::identity()));
  auto in_core = [&](const FareyDart& d) { return core.count(farey_vertex(d)) > 0; };

  // Walk the patched core from the identity dart, mapping it onto the Farey
  // tree; each edge leaving the core opens an unpatched branch on which the
  // re-identification is a single left translation.
  std::unordered_map<FareyDart, FareyDart, PSL2MatHash> image;
  std::deque<FareyDart> queue{FareyDart::identity()};
  image.emplace(FareyDart::identity(), FareyDart::identity());
  struct Arc {
    ExtRational start;
    ExtRational end;
    PSL2Mat piece;
  };
  std::vector<Arc> arcs;
  auto visit = [&](const FareyDart& from, const FareyDart& to, const FareyDart& to_image) {
    auto [it, fresh] = image.emplace(to, to_image);
    if (!fresh && it->second != to_image) throw Error("patched tree is not isomorphic to the Farey tree");
    if (fresh) queue.push_back(to);
    (void)from;
  };
  while (!queue.empty()) {
    const FareyDart x = queue.front();
    queue.pop_front();
    const FareyDart phi = image.at(x);
    const FareyDart next = patch.sigma(x);
    if (!in_core(next)) throw Error("patched rotation leaves the core");
    visit(x, next, farey_sigma(phi));
    const FareyDart across = patch.iota(x);
    if (in_core(across)) {
      visit(x, across, farey_iota(phi));
    } else {
      const PSL2Mat piece = phi * inverse(x);
      arcs.push_back({moebius(across, ExtRational(0)), moebius(across, ExtRational::infinity()), piece});
    }
  }

  std::sort(arcs.begin(), arcs.end(), [](const Arc& l, const Arc& r) { return l.start < r.start; });
  std::vector<ExtRational> points;
  std::vector<PSL2Mat> pieces;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].end != arcs[(i + 1) % arcs.size()].start) throw Error("boundary arcs do not tile the circle");
    points.push_back(arcs[i].start);
    pieces.push_back(arcs[i].piece);
  }
  return PPSL2Element::make(std::move(points), std::move(pieces));
}

PPSL2Element flip_sequence_to_circle_map(const std::vector<FareyDart>& flips, const CircleMapOptions& options) {
  TreePatch patch;
  PPSL2Element current;
  for (const auto& f : flips) {
    patch.flip(f);
    current = circle_map(patch, options);
  }
  return current;
}

}  // namespace ribbon
