#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "mventropy/rational.hpp"

namespace mventropy {

/// An interval endpoint: exact rational position plus an open/closed flag.
struct Boundary {
  Rational value;
  bool closed = true;

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

/// One piece of an IntervalSet. `lo == hi` is a singleton and then both
/// boundaries are closed.
struct Interval {
  Boundary lo;
  Boundary hi;

  bool contains(const Rational& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of subintervals of [0,1] with rational endpoints, kept in
/// canonical form: sorted, pairwise disjoint and maximal (no two pieces can
/// be merged). Equality of canonical forms is equality of sets.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Canonical form of an arbitrary list of raw intervals. Throws
  /// std::domain_error for endpoints outside [0,1] or lo > hi; a raw piece
  /// (a,a) with an open flag is empty.
  static IntervalSet normalize(const std::vector<Interval>& raw);

  static IntervalSet empty() { return {}; }
  static IntervalSet unit();
  static IntervalSet closed(const Rational& lo, const Rational& hi);
  static IntervalSet open(const Rational& lo, const Rational& hi);
  static IntervalSet make(const Rational& lo, bool lo_closed, const Rational& hi, bool hi_closed);
  static IntervalSet point(const Rational& x);

  /// Parses "[0,1/4] u (1/2,3/4) u {1}"; "{}" is the empty set. A brace
  /// group may list several points: "{0,1}".
  static IntervalSet parse(std::string_view text);

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool is_empty() const { return pieces_.empty(); }
  bool contains(const Rational& x) const;

  /// Every piece endpoint, sorted and deduplicated.
  std::vector<Rational> endpoints() const;

  Rational lebesgue() const;

  /// Open relative to the subspace topology of [0,1].
  bool is_relatively_open() const;

  /// inf over the closure of the set of |x - y|; the set must be nonempty.
  Rational distance_to(const Rational& x) const;

  bool is_subset_of(const IntervalSet& other) const;
  bool intersects(const IntervalSet& other) const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  friend bool operator<(const IntervalSet& a, const IntervalSet& b) { return a.to_string() < b.to_string(); }

  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet operator-(const IntervalSet& a, const IntervalSet& b);

  /// Complement within [0,1].
  IntervalSet complement() const;

 private:
  std::vector<Interval> pieces_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_complement(const IntervalSet& a);
inline bool is_empty_set(const IntervalSet& a) { return a.is_empty(); }

/// Cell decomposition of [0,1] induced by a sorted breakpoint list:
/// alternating point cells {p_i} and open gap cells (p_i, p_{i+1}).
/// Any IntervalSet whose endpoints are among the breakpoints is exactly a
/// union of cells.
class CellDecomposition {
 public:
  explicit CellDecomposition(std::vector<Rational> breakpoints);

  std::size_t size() const { return 2 * points_.size() - 1; }
  const std::vector<Rational>& breakpoints() const { return points_; }

  /// Representative point of cell `i` (the breakpoint or the gap midpoint).
  const Rational& sample(std::size_t i) const { return samples_[i]; }
  bool is_point_cell(std::size_t i) const { return i % 2 == 0; }
  /// Length of the cell (zero for point cells).
  Rational length(std::size_t i) const;
  /// The cell as an IntervalSet.
  IntervalSet cell(std::size_t i) const;

  /// Membership vector of `s` over the cells.
  std::vector<bool> membership(const IntervalSet& s) const;
  /// Rebuilds the canonical set from a membership vector.
  IntervalSet assemble(const std::vector<bool>& member) const;

  /// Breakpoints of all given sets plus 0 and 1.
  static CellDecomposition common(const std::vector<const IntervalSet*>& sets);

 private:
  std::vector<Rational> points_;
  std::vector<Rational> samples_;
};

}  // namespace mventropy
