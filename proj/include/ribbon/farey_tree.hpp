#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "ribbon/modular.hpp"
#include "ribbon/ppsl2.hpp"

namespace ribbon {

// The Farey tree, presented lazily: its darts are the elements g of PSL2(Z)
// with sigma(g) = g U and iota(g) = g S. The puncture to the left of the
// ray through g is labelled g(∞).

using FareyDart = PSL2Mat;

struct FareyNeighbors {
  FareyDart sigma;
  FareyDart sigma2;
  FareyDart iota;
};

inline FareyDart farey_sigma(const FareyDart& g) { return g * PSL2Mat::U(); }
inline FareyDart farey_iota(const FareyDart& g) { return g * PSL2Mat::S(); }
inline FareyDart farey_lambda(const FareyDart& g) { return farey_sigma(farey_iota(g)); }

FareyNeighbors farey_neighbors(const FareyDart& g);
/// Least of {g, gS}: names the edge.
FareyDart farey_edge(const FareyDart& g);
/// Least of {g, gU, gU^2}: names the vertex.
FareyDart farey_vertex(const FareyDart& g);

ExtRational puncture_rational(const FareyDart& g);

/// Vertex ball around the identity vertex, with BFS parents.
struct FareyBall {
  int radius = 0;
  std::unordered_map<FareyDart, int, PSL2MatHash> depth;
  std::unordered_map<FareyDart, FareyDart, PSL2MatHash> parent;
  /// Number of vertices at each distance 0..radius.
  std::vector<std::size_t> sphere_sizes;
  /// False if BFS ever reached an already-seen vertex other than its parent.
  bool acyclic = true;
};

FareyBall build_farey_ball(int radius);
/// Shared read-mostly cache; concurrent readers, idempotent inserts.
std::shared_ptr<const FareyBall> farey_ball(int radius);

/// Finite record of a flip sequence applied to the Farey tree: sigma is
/// overridden on finitely many darts, iota is never touched.
class TreePatch {
 public:
  FareyDart sigma(const FareyDart& d) const;
  FareyDart iota(const FareyDart& d) const { return farey_iota(d); }

  /// Flip the edge of `f1`, naming darts of the current patched tree.
  void flip(const FareyDart& f1);

  /// Darts whose rotation differs from the Farey tree.
  std::vector<FareyDart> support() const;
  bool empty() const { return overrides_.empty(); }

 private:
  std::unordered_map<FareyDart, FareyDart, PSL2MatHash> overrides_;
};

struct CircleMapOptions {
  /// Largest vertex-ball radius searched for the patch support.
  int max_radius = 14;
};

/// Circle map on punctures induced by the patched tree, re-identified with
/// the Farey tree by the isomorphism fixing the identity dart.
PPSL2Element circle_map(const TreePatch& patch, const CircleMapOptions& options = {});

/// Apply the flips in order (darts keep their names across flips) and return
/// the accumulated circle map; every intermediate map is validated.
PPSL2Element flip_sequence_to_circle_map(const std::vector<FareyDart>& flips,
                                         const CircleMapOptions& options = {});

}  // namespace ribbon
