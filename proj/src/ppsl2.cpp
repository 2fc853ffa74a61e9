#include "ribbon/ppsl2.hpp"

#include <algorithm>
#include <sstream>

namespace ribbon {

PPSL2Element::PPSL2Element() : pieces_{PSL2Mat::identity()} {}

PPSL2Element::PPSL2Element(const PSL2Mat& matrix) : pieces_{matrix} {}

PPSL2Element PPSL2Element::make(std::vector<ExtRational> breakpoints, std::vector<PSL2Mat> pieces) {
  if (breakpoints.empty()) {
    if (pieces.size() != 1) throw DomainError("an element without breakpoints has exactly one piece");
    return PPSL2Element(pieces.front());
  }
  const std::size_t k = breakpoints.size();
  if (pieces.size() != k) throw DomainError("need one piece per breakpoint");
  const auto first = std::min_element(breakpoints.begin(), breakpoints.end()) - breakpoints.begin();
  std::rotate(breakpoints.begin(), breakpoints.begin() + first, breakpoints.end());
  std::rotate(pieces.begin(), pieces.begin() + first, pieces.end());
  for (std::size_t i = 1; i < k; ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw DomainError("breakpoints are not distinct and cyclically ordered");
    }
  }
  std::vector<ExtRational> images;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& prev = pieces[(i + k - 1) % k];
    const ExtRational left = moebius(prev, breakpoints[i]);
    const ExtRational right = moebius(pieces[i], breakpoints[i]);
    if (left != right) {
      throw DomainError("pieces disagree at breakpoint " + to_string(breakpoints[i]));
    }
    images.push_back(right);
  }
  const auto low = std::min_element(images.begin(), images.end()) - images.begin();
  std::rotate(images.begin(), images.begin() + low, images.end());
  for (std::size_t i = 1; i < k; ++i) {
    if (!(images[i - 1] < images[i])) throw DomainError("breakpoint images are not in cyclic order");
  }
  PPSL2Element out;
  out.breakpoints_ = std::move(breakpoints);
  out.pieces_ = std::move(pieces);
  out.normalize();
  return out;
}

void PPSL2Element::normalize() {
  const std::size_t k = breakpoints_.size();
  if (k == 0) return;
  std::vector<ExtRational> kept_points;
  std::vector<PSL2Mat> kept_pieces;
  for (std::size_t i = 0; i < k; ++i) {
    if (pieces_[i] != pieces_[(i + k - 1) % k]) {
      kept_points.push_back(breakpoints_[i]);
      kept_pieces.push_back(pieces_[i]);
    }
  }
  if (kept_points.empty()) {
    breakpoints_.clear();
    pieces_ = {pieces_.front()};
    return;
  }
  breakpoints_ = std::move(kept_points);
  pieces_ = std::move(kept_pieces);
}

std::size_t PPSL2Element::arc_of(const ExtRational& r) const {
  if (breakpoints_.empty()) return 0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
  if (it == breakpoints_.begin()) return breakpoints_.size() - 1;
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

ExtRational PPSL2Element::operator()(const ExtRational& r) const { return moebius(pieces_[arc_of(r)], r); }

ExtRational ppsl2_eval(const PPSL2Element& f, const ExtRational& r) { return f(r); }

PPSL2Element ppsl2_inverse(const PPSL2Element& f) {
  std::vector<ExtRational> points;
  std::vector<PSL2Mat> pieces;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    points.push_back(moebius(f.pieces()[i], f.breakpoints()[i]));
    pieces.push_back(inverse(f.pieces()[i]));
  }
  if (points.empty()) return PPSL2Element(inverse(f.pieces().front()));
  return PPSL2Element::make(std::move(points), std::move(pieces));
}

PPSL2Element ppsl2_compose(const PPSL2Element& f, const PPSL2Element& g) {
  std::vector<ExtRational> points = g.breakpoints();
  if (!f.breakpoints().empty()) {
    const PPSL2Element g_inv = ppsl2_inverse(g);
    for (const auto& b : f.breakpoints()) points.push_back(g_inv(b));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) return PPSL2Element(f.pieces().front() * g.pieces().front());
  std::vector<PSL2Mat> pieces;
  for (const auto& x : points) {
    const PSL2Mat& inner = g.pieces()[g.arc_of(x)];
    const PSL2Mat& outer = f.pieces()[f.arc_of(moebius(inner, x))];
    pieces.push_back(outer * inner);
  }
  return PPSL2Element::make(std::move(points), std::move(pieces));
}

bool ppsl2_eq(const PPSL2Element& f, const PPSL2Element& g) { return f == g; }

PPSL2Element parse_ppsl2(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::vector<ExtRational> points;
  std::vector<PSL2Mat> pieces;
  bool global = false;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string point;
    if (!(words >> point)) continue;
    std::string matrix;
    std::getline(words, matrix);
    try {
      if (point == "all") {
        global = true;
      } else {
        points.push_back(parse_ext_rational(point));
      }
      pieces.push_back(parse_matrix(matrix));
    } catch (const DomainError& e) {
      throw ParseError(line_no, point, e.what());
    }
  }
  if (global && !points.empty()) throw ParseError(line_no, "all", "'all' cannot be mixed with breakpoints");
  if (pieces.empty()) throw ParseError(line_no, "", "empty element");
  return PPSL2Element::make(std::move(points), std::move(pieces));
}

std::string format_ppsl2(const PPSL2Element& f) {
  std::ostringstream out;
  if (f.breakpoints().empty()) {
    out << "all " << to_string(f.pieces().front()) << '\n';
    return out.str();
  }
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    out << to_string(f.breakpoints()[i]) << ' ' << to_string(f.pieces()[i]) << '\n';
  }
  return out.str();
}

}  // namespace ribbon
