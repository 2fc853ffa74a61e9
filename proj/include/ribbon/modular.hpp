#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ribbon/ribbon_graph.hpp"

namespace ribbon {

/// Raised when exact 64-bit arithmetic would overflow.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Point of Q ∪ {∞}: reduced p/q with q >= 0, and ∞ = 1/0.
class ExtRational {
 public:
  ExtRational() : p_(0), q_(1) {}
  ExtRational(std::int64_t p, std::int64_t q);
  explicit ExtRational(std::int64_t integer) : p_(integer), q_(1) {}

  static ExtRational infinity() { return ExtRational(1, 0); }

  std::int64_t num() const { return p_; }
  std::int64_t den() const { return q_; }
  bool is_infinite() const { return q_ == 0; }

  /// Linear order on Q with ∞ above everything; the circle is read
  /// counterclockwise as increasing order, wrapping at ∞.
  std::strong_ordering operator<=>(const ExtRational& other) const;
  bool operator==(const ExtRational& other) const = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

ExtRational parse_ext_rational(std::string_view text);
std::string to_string(const ExtRational& r);

/// Strict counterclockwise order a -> b -> c on the circle Q ∪ {∞}.
bool cyclically_ordered(const ExtRational& a, const ExtRational& b, const ExtRational& c);

/// Element of PSL2(Z) stored with ad - bc = 1 and either c > 0, or c = 0 and d > 0.
class PSL2Mat {
 public:
  PSL2Mat() : a_(1), b_(0), c_(0), d_(1) {}
  /// Throws DomainError when the determinant is not 1.
  PSL2Mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  static PSL2Mat identity() { return {}; }
  /// Order two: [[0,-1],[1,0]].
  static PSL2Mat S() { return {0, -1, 1, 0}; }
  /// Order three: [[0,-1],[1,-1]].
  static PSL2Mat U() { return {0, -1, 1, -1}; }
  /// Translation x -> x + 1.
  static PSL2Mat T() { return {1, 1, 0, 1}; }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  auto operator<=>(const PSL2Mat&) const = default;

 private:
  std::int64_t a_, b_, c_, d_;
};

struct PSL2MatHash {
  std::size_t operator()(const PSL2Mat& m) const noexcept;
};

PSL2Mat operator*(const PSL2Mat& x, const PSL2Mat& y);
PSL2Mat inverse(const PSL2Mat& x);
PSL2Mat power(const PSL2Mat& x, int exponent);
/// x(r) = (a r + b) / (c r + d) on Q ∪ {∞}.
ExtRational moebius(const PSL2Mat& x, const ExtRational& r);

/// `[[a,b],[c,d]]`.
PSL2Mat parse_matrix(std::string_view text);
std::string to_string(const PSL2Mat& m);

/// Partial quotients [a0; a1, ..., ak] of a finite rational.
std::vector<std::int64_t> continued_fraction(const ExtRational& r);

/// Minkowski question mark on [0, 1]; exact dyadic result.
ExtRational question_mark(const ExtRational& r);
/// Inverse on dyadic rationals in [0, 1].
ExtRational question_mark_inverse(const ExtRational& dyadic);
/// Extension to the circle: x -> ?(x - floor x) + floor x, ∞ -> ∞.
ExtRational question_mark_circle(const ExtRational& r);
ExtRational question_mark_circle_inverse(const ExtRational& dyadic);

}  // namespace ribbon
