#include "ribbon/modular.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <regex>

namespace ribbon {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < -std::numeric_limits<std::int64_t>::max()) {
    throw OverflowError("integer overflow in exact arithmetic");
  }
  return static_cast<std::int64_t>(x);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

ExtRational make_reduced(i128 p, i128 q) {
  if (p == 0 && q == 0) throw DomainError("0/0 is not a point of the circle");
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  const i128 g = gcd128(p, q);
  return ExtRational(narrow(p / g), narrow(q / g));
}

i128 floor_div(i128 p, i128 q) {
  i128 f = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --f;
  return f;
}

bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

ExtRational::ExtRational(std::int64_t p, std::int64_t q) {
  if (p == 0 && q == 0) throw DomainError("0/0 is not a point of the circle");
  i128 pp = p;
  i128 qq = q;
  if (qq < 0 || (qq == 0 && pp < 0)) {
    pp = -pp;
    qq = -qq;
  }
  const i128 g = gcd128(pp, qq);
  p_ = narrow(pp / g);
  q_ = narrow(qq / g);
}

std::strong_ordering ExtRational::operator<=>(const ExtRational& other) const {
  if (is_infinite() || other.is_infinite()) {
    return static_cast<int>(is_infinite()) <=> static_cast<int>(other.is_infinite());
  }
  const i128 lhs = static_cast<i128>(p_) * other.q_;
  const i128 rhs = static_cast<i128>(other.p_) * q_;
  return lhs < rhs ? std::strong_ordering::less
                   : (lhs > rhs ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ExtRational parse_ext_rational(std::string_view text) {
  static const std::regex pattern(R"(\s*(-?\d+)\s*(?:/\s*(\d+))?\s*)");
  const std::string s(text);
  if (s == "inf" || s == "∞" || s == "1/0") return ExtRational::infinity();
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw DomainError("bad rational literal '" + s + "'");
  try {
    const std::int64_t p = std::stoll(m[1].str());
    const std::int64_t q = m[2].matched ? std::stoll(m[2].str()) : 1;
    return ExtRational(p, q);
  } catch (const std::out_of_range&) {
    throw OverflowError("rational literal out of range: '" + s + "'");
  }
}

std::string to_string(const ExtRational& r) {
  if (r.is_infinite()) return "inf";
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

bool cyclically_ordered(const ExtRational& a, const ExtRational& b, const ExtRational& c) {
  return (a < b && b < c) || (b < c && c < a) || (c < a && a < b);
}

PSL2Mat::PSL2Mat(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (static_cast<i128>(a) * d - static_cast<i128>(b) * c != 1) {
    throw DomainError("matrix determinant must be 1");
  }
  if (c_ < 0 || (c_ == 0 && d_ < 0)) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

std::size_t PSL2MatHash::operator()(const PSL2Mat& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::int64_t x : {m.a(), m.b(), m.c(), m.d()}) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

PSL2Mat operator*(const PSL2Mat& x, const PSL2Mat& y) {
  const i128 a = static_cast<i128>(x.a()) * y.a() + static_cast<i128>(x.b()) * y.c();
  const i128 b = static_cast<i128>(x.a()) * y.b() + static_cast<i128>(x.b()) * y.d();
  const i128 c = static_cast<i128>(x.c()) * y.a() + static_cast<i128>(x.d()) * y.c();
  const i128 d = static_cast<i128>(x.c()) * y.b() + static_cast<i128>(x.d()) * y.d();
  return {narrow(a), narrow(b), narrow(c), narrow(d)};
}

PSL2Mat inverse(const PSL2Mat& x) { return {x.d(), -x.b(), -x.c(), x.a()}; }

PSL2Mat power(const PSL2Mat& x, int exponent) {
  PSL2Mat base = exponent < 0 ? inverse(x) : x;
  PSL2Mat out;
  for (int e = exponent < 0 ? -exponent : exponent; e > 0; --e) out = out * base;
  return out;
}

ExtRational moebius(const PSL2Mat& x, const ExtRational& r) {
  const i128 p = static_cast<i128>(x.a()) * r.num() + static_cast<i128>(x.b()) * r.den();
  const i128 q = static_cast<i128>(x.c()) * r.num() + static_cast<i128>(x.d()) * r.den();
  return make_reduced(p, q);
}

PSL2Mat parse_matrix(std::string_view text) {
  static const std::regex pattern(R"(\[\[(-?\d+),(-?\d+)\],\[(-?\d+),(-?\d+)\]\])");
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw DomainError("bad matrix literal '" + std::string(text) + "'");
  try {
    return {std::stoll(m[1].str()), std::stoll(m[2].str()), std::stoll(m[3].str()), std::stoll(m[4].str())};
  } catch (const std::out_of_range&) {
    throw OverflowError("matrix literal out of range");
  }
}

std::string to_string(const PSL2Mat& m) {
  return "[[" + std::to_string(m.a()) + "," + std::to_string(m.b()) + "],[" + std::to_string(m.c()) + "," +
         std::to_string(m.d()) + "]]";
}

std::vector<std::int64_t> continued_fraction(const ExtRational& r) {
  if (r.is_infinite()) throw DomainError("continued fraction of infinity");
  std::vector<std::int64_t> out;
  i128 p = r.num();
  i128 q = r.den();
  while (q != 0) {
    const i128 a = floor_div(p, q);
    out.push_back(narrow(a));
    const i128 rem = p - a * q;
    p = q;
    q = rem;
  }
  return out;
}

ExtRational question_mark(const ExtRational& r) {
  if (r.is_infinite() || r < ExtRational(0) || ExtRational(1) < r) {
    throw DomainError("question mark is defined on [0, 1]; got " + to_string(r));
  }
  if (r == ExtRational(0)) return ExtRational(0);
  if (r == ExtRational(1)) return ExtRational(1);
  const auto cf = continued_fraction(r);
  // r = [0; a1, ..., ak]; ?(r) = sum_j (-1)^(j+1) 2^(1 - (a1 + ... + aj)).
  std::vector<std::int64_t> partial;
  std::int64_t total = 0;
  for (std::size_t j = 1; j < cf.size(); ++j) {
    total += cf[j];
    if (total > 62) throw OverflowError("question mark denominator exceeds 2^62");
    partial.push_back(total);
  }
  i128 numerator = 0;
  for (std::size_t j = 0; j < partial.size(); ++j) {
    const i128 term = static_cast<i128>(1) << (total - partial[j]);
    numerator += j % 2 == 0 ? term : -term;
  }
  return make_reduced(numerator, static_cast<i128>(1) << (total - 1));
}

ExtRational question_mark_inverse(const ExtRational& dyadic) {
  if (dyadic.is_infinite() || dyadic < ExtRational(0) || ExtRational(1) < dyadic) {
    throw DomainError("inverse question mark is defined on [0, 1]");
  }
  if (!is_power_of_two(dyadic.den())) throw DomainError("not a dyadic rational: " + to_string(dyadic));
  if (dyadic == ExtRational(0) || dyadic == ExtRational(1)) return dyadic;
  // Stern-Brocot descent: the mediant of each Farey interval sits over the
  // midpoint of the matching dyadic interval.
  i128 lp = 0, lq = 1, rp = 1, rq = 1;
  i128 lo = 0, hi = 1;                     // numerators over 2^depth
  i128 scale = 1;
  const i128 y_num = dyadic.num();
  const i128 y_den = dyadic.den();
  for (int depth = 0; depth < 64; ++depth) {
    const i128 mp = lp + rp;
    const i128 mq = lq + rq;
    // midpoint = (lo + hi) / (2 * scale)
    const i128 mid_num = lo + hi;
    const i128 mid_den = 2 * scale;
    const i128 lhs = y_num * mid_den;
    const i128 rhs = mid_num * y_den;
    if (lhs == rhs) return make_reduced(mp, mq);
    lo *= 2;
    hi *= 2;
    scale *= 2;
    if (lhs < rhs) {
      rp = mp;
      rq = mq;
      hi = mid_num;
    } else {
      lp = mp;
      lq = mq;
      lo = mid_num;
    }
  }
  throw OverflowError("inverse question mark did not terminate within 64 levels");
}

ExtRational question_mark_circle(const ExtRational& r) {
  if (r.is_infinite()) return r;
  const i128 f = floor_div(r.num(), r.den());
  const ExtRational frac = make_reduced(static_cast<i128>(r.num()) - f * r.den(), r.den());
  const ExtRational q = question_mark(frac);
  return make_reduced(static_cast<i128>(q.num()) + f * q.den(), q.den());
}

ExtRational question_mark_circle_inverse(const ExtRational& dyadic) {
  if (dyadic.is_infinite()) return dyadic;
  const i128 f = floor_div(dyadic.num(), dyadic.den());
  const ExtRational frac = make_reduced(static_cast<i128>(dyadic.num()) - f * dyadic.den(), dyadic.den());
  const ExtRational x = question_mark_inverse(frac);
  return make_reduced(static_cast<i128>(x.num()) + f * x.den(), x.den());
}

}  // namespace ribbon
