#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mventropy/finite_carrier.hpp"
#include "mventropy/interval_set.hpp"
#include "mventropy/rational.hpp"

namespace mventropy {

enum class Cmp { Less, LessEq, Greater, GreaterEq };

/// Continuous piecewise-linear function given by knots (x_i, y_i) with
/// strictly increasing x_i, defined on [x_0, x_last] ⊂ [0,1].
class PLFunction {
 public:
  using Knot = std::pair<Rational, Rational>;

  PLFunction() = default;
  explicit PLFunction(std::vector<Knot> knots);

  static PLFunction constant(const Rational& c, const Rational& lo = Rational(0), const Rational& hi = Rational(1));
  /// y = slope * x + offset on [lo, hi].
  static PLFunction affine(const Rational& slope, const Rational& offset, const Rational& lo = Rational(0),
                           const Rational& hi = Rational(1));

  const std::vector<Knot>& knots() const { return knots_; }
  const Rational& lo() const { return knots_.front().first; }
  const Rational& hi() const { return knots_.back().first; }

  /// Throws std::domain_error outside [lo(), hi()].
  Rational operator()(const Rational& x) const;

  /// {x in [lo, hi] : f(x) cmp c}, exact.
  IntervalSet level_set(const Rational& c, Cmp cmp) const;

  /// Points in [lo,hi] where f equals g, for each segment on which f - g
  /// changes sign or vanishes at an isolated point. Segments where f == g
  /// identically contribute their endpoints only.
  std::vector<Rational> crossings(const PLFunction& g) const;

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::vector<Knot> knots_;
};

/// One branch of a PL multivalued map: on `domain`, x ↦ [lower(x), upper(x)].
struct PLBranch {
  IntervalSet domain;
  PLFunction lower;
  PLFunction upper;

  /// Single-valued branch (lower == upper).
  static PLBranch single(IntervalSet domain, PLFunction f);
  static PLBranch band(IntervalSet domain, PLFunction lower, PLFunction upper);

  IntervalSet value_at(const Rational& x) const;
};

enum class Regularity { Continuous, Lsc, Usc, Neither };
std::string to_string(Regularity r);

/// Multivalued map on [0,1]: phi(x) is the union of the value intervals of
/// the branches whose domain contains x.
class PLMultiMap {
 public:
  PLMultiMap() = default;
  /// Validates envelopes, ranges and coverage of [0,1]; throws
  /// std::invalid_argument.
  explicit PLMultiMap(std::vector<PLBranch> branches);

  const std::vector<PLBranch>& branches() const { return branches_; }

  /// Throws std::domain_error outside [0,1].
  IntervalSet eval(const Rational& x) const;

  bool is_single_valued() const;

  /// Sorted breakpoints: 0, 1, every domain endpoint and every knot.
  std::vector<Rational> critical_points() const;

  /// Indices of the branches whose domain contains x.
  std::vector<std::size_t> active_at(const Rational& x) const;

  /// Union of branch values at x over the branches active on the open
  /// one-sided neighbourhood (left when `left`), i.e. the one-sided limit set.
  IntervalSet one_sided_limit(const Rational& x, bool left) const;

 private:
  std::vector<PLBranch> branches_;
  std::vector<Rational> critical_;
};

/// Decided at the critical points by comparing one-sided limit sets with the
/// value; between critical points every branch is continuous.
Regularity classify_regularity(const PLMultiMap& map);

/// Grid relation on {i/m}: j/m ∈ phi_hat(i/m) iff dist(j/m, phi(i/m)) <= 1/m.
FiniteRelation discretize(const PLMultiMap& map, int m);

/// Grid coordinates {0, 1/m, ..., 1}.
std::vector<Rational> grid_points(int m);

}  // namespace mventropy
