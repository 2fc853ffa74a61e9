#pragma once

// Independent reference implementations used to cross-check the library.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ribbon/farey_tree.hpp"
#include "ribbon/groupoid.hpp"
#include "ribbon/ribbon_graph.hpp"

namespace oracle {

using ribbon::Dart;
using ribbon::DartMap;
using ribbon::RibbonGraph;

inline int count_orbits(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size()) - 1;
  std::vector<bool> seen(perm.size(), false);
  int count = 0;
  for (int d = 1; d <= n; ++d) {
    if (seen[d]) continue;
    ++count;
    for (int x = d; !seen[x]; x = perm[x]) seen[x] = true;
  }
  return count;
}

struct Counts {
  int v, e, f;
};

inline Counts counts(const RibbonGraph& g) {
  const int n = g.num_darts();
  std::vector<int> sigma(n + 1), iota(n + 1), face(n + 1);
  for (int d = 1; d <= n; ++d) {
    sigma[d] = g.sigma(d);
    iota[d] = g.iota(d);
  }
  for (int d = 1; d <= n; ++d) face[d] = sigma[iota[d]];
  return {count_orbits(sigma), count_orbits(iota), count_orbits(face)};
}

/// Face cycle lengths, sorted.
inline std::vector<int> face_lengths(const RibbonGraph& g) {
  const int n = g.num_darts();
  std::vector<bool> seen(n + 1, false);
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (seen[d]) continue;
    int len = 0;
    for (int x = d; !seen[x]; x = g.sigma(g.iota(x))) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Backtracking search for a dart bijection commuting with sigma and iota
/// that sends `from_doe` to `to_doe`.
inline std::optional<DartMap> find_iso(const RibbonGraph& a, Dart from_doe, const RibbonGraph& b, Dart to_doe) {
  const int n = a.num_darts();
  if (n != b.num_darts()) return std::nullopt;
  DartMap map(n + 1, 0);
  std::vector<bool> used(n + 1, false);
  std::vector<Dart> stack{from_doe};
  map[from_doe] = to_doe;
  used[to_doe] = true;
  while (!stack.empty()) {
    const Dart x = stack.back();
    stack.pop_back();
    const std::pair<Dart, Dart> links[] = {{a.sigma(x), b.sigma(map[x])}, {a.iota(x), b.iota(map[x])}};
    for (auto [ax, bx] : links) {
      if (map[ax] == 0) {
        if (used[bx]) return std::nullopt;
        map[ax] = bx;
        used[bx] = true;
        stack.push_back(ax);
      } else if (map[ax] != bx) {
        return std::nullopt;
      }
    }
  }
  for (int d = 1; d <= n; ++d) {
    if (map[d] == 0) return std::nullopt;
  }
  return map;
}

inline bool unmarked_iso(const RibbonGraph& a, const RibbonGraph& b) {
  for (Dart t = 1; t <= b.num_darts(); ++t) {
    if (find_iso(a, 1, b, t)) return true;
  }
  return false;
}

inline bool is_connected(const RibbonGraph& g) {
  const int n = g.num_darts();
  std::vector<bool> seen(n + 1, false);
  std::vector<Dart> stack{1};
  seen[1] = true;
  int reached = 1;
  while (!stack.empty()) {
    const Dart x = stack.back();
    stack.pop_back();
    for (Dart y : {g.sigma(x), g.iota(x)}) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

/// Uniformly random labelled connected trivalent graph with V vertices.
inline RibbonGraph random_graph(int vertices, std::mt19937_64& rng) {
  const int n = 3 * vertices;
  while (true) {
    std::vector<Dart> darts(n);
    std::iota(darts.begin(), darts.end(), 1);
    std::shuffle(darts.begin(), darts.end(), rng);
    ribbon::Cycles sigma;
    for (int i = 0; i < n; i += 3) sigma.push_back({darts[i], darts[i + 1], darts[i + 2]});
    std::shuffle(darts.begin(), darts.end(), rng);
    ribbon::Cycles iota;
    for (int i = 0; i < n; i += 2) iota.push_back({darts[i], darts[i + 1]});
    auto g = RibbonGraph::from_cycles(n, sigma, iota);
    if (is_connected(g)) return g;
  }
}

/// Random relabelling of a graph; returns the graph and the map old -> new.
inline std::pair<RibbonGraph, DartMap> relabel(const RibbonGraph& g, std::mt19937_64& rng) {
  const int n = g.num_darts();
  DartMap perm(n + 1, 0);
  std::vector<Dart> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  for (int d = 1; d <= n; ++d) perm[d] = images[d - 1];
  std::vector<Dart> sigma(n), iota(n);
  for (int d = 1; d <= n; ++d) {
    sigma[perm[d] - 1] = perm[g.sigma(d)];
    iota[perm[d] - 1] = perm[g.iota(d)];
  }
  return {RibbonGraph::from_images(sigma, iota), perm};
}

/// Every fixed-point-free involution on darts 1..n.
inline void for_each_matching(int n, const std::function<void(const std::vector<Dart>&)>& visit) {
  std::vector<Dart> iota(n + 1, 0);
  std::function<void()> rec = [&] {
    int first = 0;
    for (int d = 1; d <= n && first == 0; ++d) {
      if (iota[d] == 0) first = d;
    }
    if (first == 0) {
      visit(iota);
      return;
    }
    for (int other = first + 1; other <= n; ++other) {
      if (iota[other] != 0) continue;
      iota[first] = other;
      iota[other] = first;
      rec();
      iota[first] = iota[other] = 0;
    }
  };
  rec();
}

/// All marked types with V vertices by brute force: fix the rotation
/// (1 2 3)(4 5 6)..., try every edge pairing and every doe, and keep one
/// representative per isomorphism class using find_iso.
inline std::vector<ribbon::MarkedGraph> brute_force_types(int vertices) {
  const int n = 3 * vertices;
  std::vector<Dart> sigma(n);
  for (int d = 1; d <= n; ++d) sigma[d - 1] = (d % 3 == 0) ? d - 2 : d + 1;
  // Bucket by a cheap invariant, then test isomorphism inside buckets.
  std::map<std::vector<int>, std::vector<ribbon::MarkedGraph>> buckets;
  std::size_t total = 0;
  for_each_matching(n, [&](const std::vector<Dart>& iota) {
    std::vector<Dart> images(iota.begin() + 1, iota.end());
    auto g = RibbonGraph::from_images(sigma, images);
    if (!is_connected(g)) return;
    auto key = face_lengths(g);
    for (Dart doe = 1; doe <= n; ++doe) {
      auto& bucket = buckets[key];
      const bool known = std::any_of(bucket.begin(), bucket.end(), [&](const ribbon::MarkedGraph& m) {
        return find_iso(g, doe, m.graph(), m.doe()).has_value();
      });
      if (!known) {
        bucket.emplace_back(g, doe);
        ++total;
      }
    }
  });
  std::vector<ribbon::MarkedGraph> out;
  out.reserve(total);
  for (auto& [key, bucket] : buckets) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

/// Free reduction that deletes a uniformly chosen cancelling pair each round.
inline std::vector<ribbon::HalfStep> random_reduce(std::vector<ribbon::HalfStep> letters, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i + 1] == letters[i].inverse()) spots.push_back(i);
    }
    if (spots.empty()) return letters;
    const auto i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
}

/// Random walk of `corners` corners in the midpoint subdivision, starting on
/// edge `start`; backtracking is allowed, so the result is usually unreduced.
inline ribbon::GroupoidWord random_word(const RibbonGraph& g, Dart start, int corners, std::mt19937_64& rng) {
  std::vector<ribbon::HalfStep> letters;
  Dart edge = g.edge_of(start);
  for (int i = 0; i < corners; ++i) {
    const Dart in = std::uniform_int_distribution<int>(0, 1)(rng) ? edge : g.iota(edge);
    const auto around = g.vertex_darts(in);
    const Dart out = around[std::uniform_int_distribution<std::size_t>(0, around.size() - 1)(rng)];
    letters.push_back({in, ribbon::Direction::in});
    letters.push_back({out, ribbon::Direction::out});
    edge = g.edge_of(out);
  }
  if (letters.empty()) return ribbon::identity_word(g, start);
  return ribbon::make_word(g, letters);
}

/// Connected double cover of `g`: two copies with the edge of `cut` crossed.
inline std::pair<RibbonGraph, DartMap> double_cover(const RibbonGraph& g, Dart cut) {
  const int n = g.num_darts();
  std::vector<Dart> sigma(2 * n), iota(2 * n);
  DartMap psi(2 * n + 1, 0);
  const Dart a = cut;
  const Dart b = g.iota(cut);
  for (int copy = 0; copy < 2; ++copy) {
    for (int d = 1; d <= n; ++d) {
      const int h = d + copy * n;
      psi[h] = d;
      sigma[h - 1] = g.sigma(d) + copy * n;
      int partner_copy = copy;
      if (d == a || d == b) partner_copy = 1 - copy;
      iota[h - 1] = g.iota(d) + partner_copy * n;
    }
  }
  return {RibbonGraph::from_images(sigma, iota), psi};
}

/// Rotation of the Farey tree after a patch, tracked on its own: darts are
/// matrices, and flips rewrite a local map exactly as on finite graphs.
class PatchedFarey {
 public:
  using Mat = ribbon::PSL2Mat;

  Mat sigma(const Mat& x) const {
    auto it = rot_.find(x);
    return it == rot_.end() ? x * Mat::U() : it->second;
  }
  Mat iota(const Mat& x) const { return x * Mat::S(); }

  void flip(const Mat& f1) {
    const Mat f2 = iota(f1);
    const Mat a = sigma(f1), b = sigma(a), d = sigma(f2), c = sigma(d);
    rot_[f1] = b;
    rot_[b] = d;
    rot_[d] = f1;
    rot_[f2] = c;
    rot_[c] = a;
    rot_[a] = f2;
  }

  bool touched(const Mat& x) const {
    for (Mat y = x;;) {
      if (rot_.count(y) && rot_.at(y) != y * Mat::U()) return true;
      y = sigma(y);
      if (y == x) return false;
    }
  }

 private:
  std::map<Mat, Mat> rot_;
};

/// Checks F against the patched tree on every dart within `radius` steps of
/// the identity: phi is the isomorphism onto the Farey tree fixing the
/// identity dart, and the puncture left of x must go to the puncture left of
/// phi(x). Punctures of darts near the patch are read off far along their
/// left-turn path, where the rotation is untouched.
inline bool circle_map_agrees(const PatchedFarey& tree, const ribbon::PPSL2Element& f, int radius) {
  using Mat = ribbon::PSL2Mat;
  std::map<Mat, Mat> phi{{Mat::identity(), Mat::identity()}};
  std::vector<Mat> layer{Mat::identity()};
  for (int r = 0; r < radius; ++r) {
    std::vector<Mat> next;
    for (const auto& x : layer) {
      const Mat px = phi.at(x);
      const std::pair<Mat, Mat> steps[] = {{tree.sigma(x), px * Mat::U()}, {tree.iota(x), px * Mat::S()}};
      for (const auto& [y, py] : steps) {
        auto [it, fresh] = phi.emplace(y, py);
        if (!fresh && it->second != py) return false;
        if (fresh) next.push_back(y);
      }
    }
    layer = std::move(next);
  }
  for (const auto& [x, px] : phi) {
    // A left-turn path never backtracks, so once it leaves the finite patch
    // it stays out; 48 steps is far beyond the patches used in tests.
    Mat y = x;
    for (int step = 0; step < 48; ++step) y = tree.sigma(tree.iota(y));
    if (tree.touched(y) || tree.touched(tree.iota(y))) return false;
    const auto label = ribbon::moebius(y, ribbon::ExtRational::infinity());
    if (f(label) != ribbon::moebius(px, ribbon::ExtRational::infinity())) return false;
  }
  return true;
}

}  // namespace oracle
