#include "mventropy/interval_set.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mventropy/errors.hpp"

namespace mventropy {

bool Interval::contains(const Rational& x) const {
  bool above_lo = lo.closed ? x >= lo.value : x > lo.value;
  bool below_hi = hi.closed ? x <= hi.value : x < hi.value;
  return above_lo && below_hi;
}

// ---------------------------------------------------------------------------
// CellDecomposition

CellDecomposition::CellDecomposition(std::vector<Rational> breakpoints) : points_(std::move(breakpoints)) {
  points_.push_back(Rational(0));
  points_.push_back(Rational(1));
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  samples_.reserve(size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    samples_.push_back(points_[i]);
    if (i + 1 < points_.size()) {
      Rational mid = (points_[i] + points_[i + 1]) / 2;
      mid.canonicalize();
      samples_.push_back(std::move(mid));
    }
  }
}

Rational CellDecomposition::length(std::size_t i) const {
  if (is_point_cell(i)) return Rational(0);
  return points_[i / 2 + 1] - points_[i / 2];
}

IntervalSet CellDecomposition::cell(std::size_t i) const {
  if (is_point_cell(i)) return IntervalSet::point(points_[i / 2]);
  return IntervalSet::open(points_[i / 2], points_[i / 2 + 1]);
}

std::vector<bool> CellDecomposition::membership(const IntervalSet& s) const {
  std::vector<bool> out(size(), false);
  // Linear sweep: samples are increasing, pieces are sorted.
  const auto& pieces = s.pieces();
  std::size_t p = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const Rational& x = samples_[i];
    while (p < pieces.size() &&
           (pieces[p].hi.value < x || (pieces[p].hi.value == x && !pieces[p].hi.closed))) {
      ++p;
    }
    out[i] = p < pieces.size() && pieces[p].contains(x);
  }
  return out;
}

IntervalSet CellDecomposition::assemble(const std::vector<bool>& member) const {
  std::vector<Interval> pieces;
  std::size_t i = 0;
  const std::size_t n = size();
  while (i < n) {
    if (!member[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && member[j + 1]) ++j;
    Interval piece;
    if (is_point_cell(i)) {
      piece.lo = {points_[i / 2], true};
    } else {
      piece.lo = {points_[i / 2], false};
    }
    if (is_point_cell(j)) {
      piece.hi = {points_[j / 2], true};
    } else {
      piece.hi = {points_[j / 2 + 1], false};
    }
    pieces.push_back(std::move(piece));
    i = j + 1;
  }
  return IntervalSet::normalize(pieces);
}

CellDecomposition CellDecomposition::common(const std::vector<const IntervalSet*>& sets) {
  std::vector<Rational> pts;
  for (const IntervalSet* s : sets) {
    for (const auto& piece : s->pieces()) {
      pts.push_back(piece.lo.value);
      pts.push_back(piece.hi.value);
    }
  }
  return CellDecomposition(std::move(pts));
}

// ---------------------------------------------------------------------------
// IntervalSet

namespace {

void check_unit(const Rational& x) {
  if (x < 0 || x > 1) {
    throw std::domain_error("interval endpoint " + to_string(x) + " outside [0,1]");
  }
}

// Canonical form from raw pieces that are already validated.
std::vector<Interval> canonical_pieces(const std::vector<Interval>& raw) {
  std::vector<Interval> live;
  live.reserve(raw.size());
  for (const auto& r : raw) {
    if (r.lo.value == r.hi.value && !(r.lo.closed && r.hi.closed)) continue;
    live.push_back(r);
  }
  if (live.empty()) return {};

  // Sort by lower boundary; a closed lower boundary precedes an open one at
  // the same value.
  std::sort(live.begin(), live.end(), [](const Interval& a, const Interval& b) {
    if (a.lo.value != b.lo.value) return a.lo.value < b.lo.value;
    return a.lo.closed && !b.lo.closed;
  });

  std::vector<Interval> out;
  out.push_back(live.front());
  for (std::size_t i = 1; i < live.size(); ++i) {
    Interval& cur = out.back();
    const Interval& nxt = live[i];
    // Mergeable when the gap between cur.hi and nxt.lo is empty.
    bool touches = nxt.lo.value < cur.hi.value ||
                   (nxt.lo.value == cur.hi.value && (nxt.lo.closed || cur.hi.closed));
    if (touches) {
      if (nxt.hi.value > cur.hi.value ||
          (nxt.hi.value == cur.hi.value && nxt.hi.closed && !cur.hi.closed)) {
        cur.hi = nxt.hi;
      }
    } else {
      out.push_back(nxt);
    }
  }
  return out;
}

}  // namespace

IntervalSet IntervalSet::normalize(const std::vector<Interval>& input) {
  std::vector<Interval> raw = input;
  for (auto& r : raw) {
    r.lo.value.canonicalize();
    r.hi.value.canonicalize();
    check_unit(r.lo.value);
    check_unit(r.hi.value);
    if (r.lo.value > r.hi.value) {
      throw std::domain_error("interval with lo > hi: " + mventropy::to_string(r.lo.value) + " > " + mventropy::to_string(r.hi.value));
    }
  }
  IntervalSet out;
  out.pieces_ = canonical_pieces(raw);
  return out;
}

IntervalSet IntervalSet::unit() { return closed(Rational(0), Rational(1)); }

IntervalSet IntervalSet::closed(const Rational& lo, const Rational& hi) { return make(lo, true, hi, true); }

IntervalSet IntervalSet::open(const Rational& lo, const Rational& hi) { return make(lo, false, hi, false); }

IntervalSet IntervalSet::make(const Rational& lo, bool lo_closed, const Rational& hi, bool hi_closed) {
  return normalize({Interval{{lo, lo_closed}, {hi, hi_closed}}});
}

IntervalSet IntervalSet::point(const Rational& x) { return closed(x, x); }

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Rational& v, const Interval& piece) { return v < piece.lo.value; });
  if (it == pieces_.begin()) return false;
  return std::prev(it)->contains(x);
}

std::vector<Rational> IntervalSet::endpoints() const {
  std::vector<Rational> out;
  for (const auto& p : pieces_) {
    out.push_back(p.lo.value);
    if (p.hi.value != p.lo.value) out.push_back(p.hi.value);
  }
  return out;
}

Rational IntervalSet::lebesgue() const {
  Rational total(0);
  for (const auto& p : pieces_) total += p.hi.value - p.lo.value;
  return total;
}

bool IntervalSet::is_relatively_open() const {
  for (const auto& p : pieces_) {
    if (p.lo.closed && p.lo.value != 0) return false;
    if (p.hi.closed && p.hi.value != 1) return false;
    if (p.lo.value == p.hi.value) return false;
  }
  return true;
}

Rational IntervalSet::distance_to(const Rational& x) const {
  if (pieces_.empty()) throw std::domain_error("distance to the empty set");
  bool first = true;
  Rational best;
  for (const auto& p : pieces_) {
    Rational d;
    if (x < p.lo.value) {
      d = p.lo.value - x;
    } else if (x > p.hi.value) {
      d = x - p.hi.value;
    } else {
      return Rational(0);
    }
    if (first || d < best) {
      best = d;
      first = false;
    }
  }
  return best;
}

bool IntervalSet::is_subset_of(const IntervalSet& other) const { return (*this - other).is_empty(); }

bool IntervalSet::intersects(const IntervalSet& other) const { return !(*this & other).is_empty(); }

std::string IntervalSet::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (i) out += " u ";
    if (p.lo.value == p.hi.value) {
      out += "{" + mventropy::to_string(p.lo.value) + "}";
    } else {
      out += p.lo.closed ? "[" : "(";
      out += mventropy::to_string(p.lo.value);
      out += ",";
      out += mventropy::to_string(p.hi.value);
      out += p.hi.closed ? "]" : ")";
    }
  }
  return out;
}

namespace {

template <class Combine>
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Combine op) {
  CellDecomposition cells = CellDecomposition::common({&a, &b});
  auto ma = cells.membership(a);
  auto mb = cells.membership(b);
  std::vector<bool> out(cells.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(ma[i], mb[i]);
  return cells.assemble(out);
}

}  // namespace

IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  std::vector<Interval> raw = a.pieces_;
  raw.insert(raw.end(), b.pieces_.begin(), b.pieces_.end());
  return IntervalSet::normalize(raw);
}

IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
  if (a.is_empty() || b.is_empty()) return {};
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) {
  if (a.is_empty() || b.is_empty()) return a;
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

IntervalSet IntervalSet::complement() const { return unit() - *this; }

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) { return a | b; }
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) { return a & b; }
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) { return a - b; }
IntervalSet set_complement(const IntervalSet& a) { return a.complement(); }

// ---------------------------------------------------------------------------
// Literal parser

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  IntervalSet parse() {
    std::vector<Interval> raw;
    skip_ws();
    if (at_end()) fail("empty literal");
    if (peek_word("empty")) {
      pos_ += 5;
      skip_ws();
      if (!at_end()) fail("trailing input after 'empty'");
      return {};
    }
    term(raw);
    skip_ws();
    while (!at_end()) {
      char c = text_[pos_];
      if (c != 'u' && c != 'U') fail("expected 'u' between terms");
      ++pos_;
      skip_ws();
      term(raw);
      skip_ws();
    }
    try {
      return IntervalSet::normalize(raw);
    } catch (const std::domain_error& e) {
      throw ParseError(std::string("interval literal '") + std::string(text_) + "': " + e.what());
    }
  }

 private:
  void term(std::vector<Interval>& raw) {
    skip_ws();
    if (at_end()) fail("missing term");
    char open = text_[pos_++];
    if (open == '{') {
      skip_ws();
      if (!at_end() && text_[pos_] == '}') {
        ++pos_;
        return;
      }
      while (true) {
        Rational x = number();
        raw.push_back(Interval{{x, true}, {x, true}});
        skip_ws();
        if (at_end()) fail("unterminated '{'");
        char c = text_[pos_++];
        if (c == '}') break;
        if (c != ',') fail("expected ',' or '}'");
      }
      return;
    }
    if (open != '[' && open != '(') fail("expected '[', '(' or '{'");
    Rational lo = number();
    skip_ws();
    if (at_end() || text_[pos_] != ',') fail("expected ','");
    ++pos_;
    Rational hi = number();
    skip_ws();
    if (at_end()) fail("unterminated interval");
    char close = text_[pos_++];
    if (close != ']' && close != ')') fail("expected ']' or ')'");
    if (lo > hi) fail("interval with lo > hi");
    raw.push_back(Interval{{lo, open == '['}, {hi, close == ']'}});
  }

  Rational number() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                         text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return parse_rational(text_.substr(start, pos_ - start));
  }

  bool peek_word(std::string_view w) const { return text_.substr(pos_, w.size()) == w; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("interval literal '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IntervalSet IntervalSet::parse(std::string_view text) { return LiteralParser(text).parse(); }

}  // namespace mventropy
