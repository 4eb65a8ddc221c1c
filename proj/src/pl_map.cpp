#include "mventropy/pl_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace mventropy {

namespace {

bool satisfies(const Rational& y, const Rational& c, Cmp cmp) {
  switch (cmp) {
    case Cmp::Less: return y < c;
    case Cmp::LessEq: return y <= c;
    case Cmp::Greater: return y > c;
    case Cmp::GreaterEq: return y >= c;
  }
  return false;
}

// {x in [0,1] : x < t} (or <= when inclusive).
IntervalSet ray_below(const Rational& t, bool inclusive) {
  if (t < 0 || (t == 0 && !inclusive)) return {};
  if (t > 1 || (t == 1 && inclusive)) return IntervalSet::unit();
  return IntervalSet::make(Rational(0), true, t, inclusive);
}

IntervalSet ray_above(const Rational& t, bool inclusive) {
  if (t > 1 || (t == 1 && !inclusive)) return {};
  if (t < 0 || (t == 0 && inclusive)) return IntervalSet::unit();
  return IntervalSet::make(t, inclusive, Rational(1), true);
}

}  // namespace

// ---------------------------------------------------------------------------
// PLFunction

PLFunction::PLFunction(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("PL function needs at least one knot");
  for (auto& k : knots_) {
    k.first.canonicalize();
    k.second.canonicalize();
    if (k.first < 0 || k.first > 1) throw std::invalid_argument("PL knot abscissa outside [0,1]");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i - 1].first < knots_[i].first)) throw std::invalid_argument("PL knots must be strictly increasing");
  }
}

PLFunction PLFunction::constant(const Rational& c, const Rational& lo, const Rational& hi) {
  if (lo == hi) return PLFunction({{lo, c}});
  return PLFunction({{lo, c}, {hi, c}});
}

PLFunction PLFunction::affine(const Rational& slope, const Rational& offset, const Rational& lo, const Rational& hi) {
  if (lo == hi) return PLFunction({{lo, slope * lo + offset}});
  return PLFunction({{lo, slope * lo + offset}, {hi, slope * hi + offset}});
}

Rational PLFunction::operator()(const Rational& x) const {
  if (x < lo() || x > hi()) {
    throw std::domain_error("PL function evaluated at " + to_string(x) + " outside its knot range");
  }
  auto it = std::lower_bound(knots_.begin(), knots_.end(), x,
                             [](const Knot& k, const Rational& v) { return k.first < v; });
  if (it->first == x) return it->second;
  const Knot& b = *it;
  const Knot& a = *std::prev(it);
  Rational y = a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
  y.canonicalize();
  return y;
}

IntervalSet PLFunction::level_set(const Rational& c, Cmp cmp) const {
  if (knots_.size() == 1) {
    return satisfies(knots_[0].second, c, cmp) ? IntervalSet::point(knots_[0].first) : IntervalSet{};
  }
  const bool below = cmp == Cmp::Less || cmp == Cmp::LessEq;
  const bool inclusive = cmp == Cmp::LessEq || cmp == Cmp::GreaterEq;
  IntervalSet out;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const auto& [x0, y0] = knots_[i];
    const auto& [x1, y1] = knots_[i + 1];
    IntervalSet segment = IntervalSet::closed(x0, x1);
    IntervalSet part;
    if (y0 == y1) {
      if (satisfies(y0, c, cmp)) part = segment;
    } else {
      Rational t = x0 + (c - y0) * (x1 - x0) / (y1 - y0);
      t.canonicalize();
      const bool increasing = y1 > y0;
      // f < c  <=>  x < t when increasing, x > t when decreasing.
      IntervalSet ray = (below == increasing) ? ray_below(t, inclusive) : ray_above(t, inclusive);
      part = segment & ray;
    }
    out = out | part;
  }
  return out;
}

std::vector<Rational> PLFunction::crossings(const PLFunction& g) const {
  Rational lo_x = std::max(lo(), g.lo());
  Rational hi_x = std::min(hi(), g.hi());
  std::vector<Rational> out;
  if (lo_x > hi_x) return out;
  std::vector<Rational> xs{lo_x, hi_x};
  for (const auto& k : knots_)
    if (k.first >= lo_x && k.first <= hi_x) xs.push_back(k.first);
  for (const auto& k : g.knots_)
    if (k.first >= lo_x && k.first <= hi_x) xs.push_back(k.first);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational d0 = (*this)(xs[i]) - g(xs[i]);
    if (d0 == 0) out.push_back(xs[i]);
    if (i + 1 < xs.size()) {
      Rational d1 = (*this)(xs[i + 1]) - g(xs[i + 1]);
      if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
        Rational t = xs[i] + d0 * (xs[i + 1] - xs[i]) / (d0 - d1);
        t.canonicalize();
        out.push_back(t);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PLBranch

PLBranch PLBranch::single(IntervalSet domain, PLFunction f) { return PLBranch{std::move(domain), f, f}; }

PLBranch PLBranch::band(IntervalSet domain, PLFunction lower, PLFunction upper) {
  return PLBranch{std::move(domain), std::move(lower), std::move(upper)};
}

IntervalSet PLBranch::value_at(const Rational& x) const { return IntervalSet::closed(lower(x), upper(x)); }

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Continuous: return "continuous";
    case Regularity::Lsc: return "lsc";
    case Regularity::Usc: return "usc";
    case Regularity::Neither: return "neither";
  }
  return "neither";
}

// ---------------------------------------------------------------------------
// PLMultiMap

PLMultiMap::PLMultiMap(std::vector<PLBranch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("PL multivalued map needs at least one branch");
  IntervalSet covered;
  for (const auto& b : branches_) {
    if (b.domain.is_empty()) throw std::invalid_argument("PL branch with empty domain");
    const Rational& dlo = b.domain.pieces().front().lo.value;
    const Rational& dhi = b.domain.pieces().back().hi.value;
    for (const PLFunction* f : {&b.lower, &b.upper}) {
      if (f->lo() > dlo || f->hi() < dhi) throw std::invalid_argument("PL branch knots do not span its domain closure");
    }
    // Check envelope order and range at every knot in the domain closure
    // and at every domain endpoint; both functions are linear in between.
    std::vector<Rational> xs = b.domain.endpoints();
    for (const PLFunction* f : {&b.lower, &b.upper})
      for (const auto& k : f->knots())
        if (k.first >= dlo && k.first <= dhi) xs.push_back(k.first);
    for (const auto& x : xs) {
      bool in_closure = false;
      for (const auto& p : b.domain.pieces()) in_closure = in_closure || (x >= p.lo.value && x <= p.hi.value);
      if (!in_closure) continue;
      Rational l = b.lower(x), u = b.upper(x);
      if (l > u) throw std::invalid_argument("PL branch lower envelope exceeds upper at x=" + to_string(x));
      if (l < 0 || u > 1) throw std::invalid_argument("PL branch values leave [0,1] at x=" + to_string(x));
    }
    covered = covered | b.domain;
  }
  if (!(covered == IntervalSet::unit())) {
    throw std::invalid_argument("PL branch domains do not cover [0,1]: " + covered.to_string());
  }

  critical_ = {Rational(0), Rational(1)};
  for (const auto& b : branches_) {
    for (const auto& e : b.domain.endpoints()) critical_.push_back(e);
    for (const PLFunction* f : {&b.lower, &b.upper})
      for (const auto& k : f->knots()) critical_.push_back(k.first);
  }
  std::sort(critical_.begin(), critical_.end());
  critical_.erase(std::unique(critical_.begin(), critical_.end()), critical_.end());
}

IntervalSet PLMultiMap::eval(const Rational& x) const {
  if (x < 0 || x > 1) throw std::domain_error("eval at " + to_string(x) + " outside [0,1]");
  IntervalSet out;
  for (const auto& b : branches_)
    if (b.domain.contains(x)) out = out | b.value_at(x);
  return out;
}

bool PLMultiMap::is_single_valued() const {
  for (const auto& b : branches_)
    if (!(b.lower == b.upper)) return false;
  // Overlapping single-valued branches may still disagree.
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      IntervalSet common = branches_[i].domain & branches_[j].domain;
      if (common.is_empty()) continue;
      CellDecomposition cells(critical_);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const Rational& x = cells.sample(c);
        if (common.contains(x) && branches_[i].lower(x) != branches_[j].lower(x)) return false;
      }
    }
  }
  return true;
}

std::vector<Rational> PLMultiMap::critical_points() const { return critical_; }

std::vector<std::size_t> PLMultiMap::active_at(const Rational& x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < branches_.size(); ++i)
    if (branches_[i].domain.contains(x)) out.push_back(i);
  return out;
}

IntervalSet PLMultiMap::one_sided_limit(const Rational& x, bool left) const {
  // Domain membership is constant on each open gap between critical points,
  // so the gap midpoint decides which branches are active next to x.
  auto it = std::lower_bound(critical_.begin(), critical_.end(), x);
  Rational probe;
  if (left) {
    if (it == critical_.begin()) return {};
    probe = (*std::prev(it) + x) / 2;
  } else {
    auto next = (it != critical_.end() && *it == x) ? std::next(it) : it;
    if (next == critical_.end()) return {};
    probe = (x + *next) / 2;
  }
  IntervalSet out;
  for (const auto& b : branches_)
    if (b.domain.contains(probe)) out = out | b.value_at(x);
  return out;
}

Regularity classify_regularity(const PLMultiMap& map) {
  bool usc = true;
  bool lsc = true;
  for (const auto& x : map.critical_points()) {
    IntervalSet value = map.eval(x);
    for (bool left : {true, false}) {
      if ((left && x == 0) || (!left && x == 1)) continue;
      IntervalSet limit = map.one_sided_limit(x, left);
      if (!limit.is_subset_of(value)) usc = false;
      if (!value.is_subset_of(limit)) lsc = false;
    }
  }
  if (usc && lsc) return Regularity::Continuous;
  if (lsc) return Regularity::Lsc;
  if (usc) return Regularity::Usc;
  return Regularity::Neither;
}

std::vector<Rational> grid_points(int m) {
  if (m < 1) throw std::invalid_argument("grid size must be positive");
  std::vector<Rational> out;
  for (int i = 0; i <= m; ++i) {
    Rational x(i, m);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

FiniteRelation discretize(const PLMultiMap& map, int m) {
  if (m < 2) throw std::invalid_argument("discretize needs m >= 2");
  auto pts = grid_points(m);
  Rational slack(1, m);
  std::vector<std::vector<int>> values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    IntervalSet v = map.eval(pts[i]);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (v.distance_to(pts[j]) <= slack) values[i].push_back(static_cast<int>(j));
  }
  return FiniteRelation(FiniteMetricSpace::on_line(pts), std::move(values));
}

}  // namespace mventropy
