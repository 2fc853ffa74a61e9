#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ribbon/modular.hpp"

namespace ribbon {

/// Orientation-preserving circle homeomorphism that is PSL2(Z) on each of
/// finitely many arcs with rational endpoints.
///
/// Breakpoints are stored in increasing order (∞ last). Piece i acts on the
/// closed-open counterclockwise arc [b_i, b_{i+1}), the last arc wrapping
/// through ∞ back to b_0. Elements are kept normalized: adjacent pieces
/// differ, and a single remaining piece drops all breakpoints.
class PPSL2Element {
 public:
  /// The identity map.
  PPSL2Element();
  /// A global Moebius map with no breakpoints.
  explicit PPSL2Element(const PSL2Mat& matrix);

  /// Validates continuity and bijectivity, then normalizes. Breakpoints may
  /// be given in any rotation of their cyclic order.
  static PPSL2Element make(std::vector<ExtRational> breakpoints, std::vector<PSL2Mat> pieces);

  const std::vector<ExtRational>& breakpoints() const { return breakpoints_; }
  const std::vector<PSL2Mat>& pieces() const { return pieces_; }

  /// Index of the piece whose arc contains r.
  std::size_t arc_of(const ExtRational& r) const;
  ExtRational operator()(const ExtRational& r) const;

  bool operator==(const PPSL2Element&) const = default;

 private:
  void normalize();

  std::vector<ExtRational> breakpoints_;
  std::vector<PSL2Mat> pieces_;
};

ExtRational ppsl2_eval(const PPSL2Element& f, const ExtRational& r);
/// (f ∘ g)(r) = f(g(r)).
PPSL2Element ppsl2_compose(const PPSL2Element& f, const PPSL2Element& g);
PPSL2Element ppsl2_inverse(const PPSL2Element& f);
bool ppsl2_eq(const PPSL2Element& f, const PPSL2Element& g);

/// Document: one `<breakpoint> <matrix>` pair per line in cyclic order; a
/// breakpoint-free element is written `all <matrix>`.
PPSL2Element parse_ppsl2(std::string_view text);
std::string format_ppsl2(const PPSL2Element& f);

}  // namespace ribbon
