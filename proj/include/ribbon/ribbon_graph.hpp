#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ribbon {

/// Darts of a finite graph are the integers 1..N.
using Dart = int;
using Cycle = std::vector<Dart>;
using Cycles = std::vector<Cycle>;

/// A map on darts indexed by dart id; entry 0 is unused.
using DartMap = std::vector<Dart>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is well formed but violates a domain precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }
  /// The message without the location prefix.
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string field_;
  std::string detail_;
};

/// Combinatorial map on darts 1..N: `sigma` rotates counterclockwise around a
/// vertex, `iota` jumps to the other end of the same edge. Only bijectivity is
/// enforced at construction; the trivalent structure is checked by validate().
class RibbonGraph {
 public:
  RibbonGraph() = default;

  /// images[i] is the image of dart i + 1.
  static RibbonGraph from_images(const std::vector<Dart>& sigma_images,
                                 const std::vector<Dart>& iota_images);
  /// Darts missing from every cycle are fixed points.
  static RibbonGraph from_cycles(int darts, const Cycles& sigma, const Cycles& iota);

  int num_darts() const { return static_cast<int>(sigma_.size()) - 1; }
  bool empty() const { return num_darts() <= 0; }
  bool contains(Dart d) const { return d >= 1 && d <= num_darts(); }

  Dart sigma(Dart d) const { return sigma_[d]; }
  Dart sigma_inv(Dart d) const { return sigma_inv_[d]; }
  Dart iota(Dart d) const { return iota_[d]; }
  /// Left-turn successor: cross the edge, then rotate.
  Dart lambda(Dart d) const { return sigma_[iota_[d]]; }

  /// Vertices and edges are named by their minimal dart.
  Dart vertex_of(Dart d) const;
  Dart edge_of(Dart d) const { return std::min(d, iota_[d]); }

  /// Cycles sorted by minimal element, each starting at its minimum.
  Cycles sigma_cycles() const;
  Cycles iota_cycles() const;
  Cycles lambda_cycles() const;

  /// Darts in one sigma orbit, starting at d.
  std::vector<Dart> vertex_darts(Dart d) const;

  const DartMap& sigma_map() const { return sigma_; }
  const DartMap& iota_map() const { return iota_; }

  /// Replace the rotation; the new map must be a bijection on the same darts.
  RibbonGraph with_sigma(DartMap sigma) const;

  /// True when <sigma, iota> acts transitively on the darts.
  bool connected() const;

  bool operator==(const RibbonGraph& other) const {
    return sigma_ == other.sigma_ && iota_ == other.iota_;
  }

 private:
  RibbonGraph(DartMap sigma, DartMap iota);

  DartMap sigma_{0};
  DartMap sigma_inv_{0};
  DartMap iota_{0};
};

/// Orbits of a permutation given as a dart map.
Cycles orbits(const DartMap& perm);

struct ValidationIssue {
  std::string invariant;
  Dart witness = 0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool connected = false;

  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const RibbonGraph& graph);

/// Throws DomainError naming the first violated invariant or disconnection.
void require_valid(const RibbonGraph& graph);
void require_valid_connected(const RibbonGraph& graph);

struct Invariants {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int genus = 0;
  int punctures = 0;
  int rank = 0;

  bool operator==(const Invariants&) const = default;
};

Invariants invariants(const RibbonGraph& graph);

struct Puncture {
  Cycle cycle;             ///< lambda orbit, starting at its minimal dart
  std::vector<Dart> edges; ///< edge label (minimal dart) of each cycle entry
  bool finite = true;

  std::size_t length() const { return cycle.size(); }
};

std::vector<Puncture> punctures(const RibbonGraph& graph);

class MarkedGraph {
 public:
  MarkedGraph(RibbonGraph graph, Dart doe);

  const RibbonGraph& graph() const { return graph_; }
  Dart doe() const { return doe_; }

  bool operator==(const MarkedGraph&) const = default;

 private:
  RibbonGraph graph_;
  Dart doe_;
};

struct CanonicalForm {
  /// For labels 1..N: (label of sigma(d), label of iota(d)).
  std::vector<int> code;

  int num_darts() const { return static_cast<int>(code.size() / 2); }

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& form) const noexcept;
};

/// labels[d] is the canonical label of dart d, with the doe labelled 1.
DartMap canonical_labels(const RibbonGraph& graph, Dart doe);
CanonicalForm canonical_form(const MarkedGraph& marked);
/// Minimum over all doe choices; the isomorphism type of the bare graph.
CanonicalForm unmarked_canonical_form(const RibbonGraph& graph);
/// The graph on canonical labels, doe = 1.
MarkedGraph from_canonical(const CanonicalForm& form);

bool are_isomorphic(const MarkedGraph& lhs, const MarkedGraph& rhs);

/// Dart bijection from `from` onto `to` commuting with sigma and iota and
/// sending doe to doe, if one exists.
std::optional<DartMap> marked_isomorphism(const MarkedGraph& from, const MarkedGraph& to);

/// Distinct canonical forms over all doe positions.
std::vector<CanonicalForm> doe_orbit(const MarkedGraph& marked);
/// All automorphisms; the identity comes first.
std::vector<DartMap> automorphisms(const RibbonGraph& graph);

/// Underlying multigraph: vertices 0..V-1 and sorted endpoint pairs.
struct UnderlyingGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  auto operator<=>(const UnderlyingGraph&) const = default;
  bool operator==(const UnderlyingGraph&) const = default;
};

inline constexpr int kForgetRibbonMaxVertices = 16;

/// Canonical underlying multigraph, ignoring the cyclic orders.
UnderlyingGraph forget_ribbon(const RibbonGraph& graph);

/// Invert the rotation at every vertex listed (by any of its darts).
RibbonGraph reverse_rotations(const RibbonGraph& graph, const std::vector<Dart>& vertices);

}  // namespace ribbon
