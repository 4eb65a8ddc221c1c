#pragma once

#include <cstdint>
#include <vector>

#include "mventropy/point_set.hpp"
#include "mventropy/rational.hpp"

namespace mventropy {

/// Finite metric space on points {0, ..., n-1}.
///
/// Distances are stored as ranks into the sorted list of distinct distance
/// values, so threshold tests and bottleneck computations run on small
/// integers while every reported distance stays exact.
class FiniteMetricSpace {
 public:
  using Rank = std::uint16_t;

  FiniteMetricSpace() = default;

  /// Validates the metric axioms exactly; throws std::invalid_argument.
  explicit FiniteMetricSpace(const std::vector<std::vector<Rational>>& dist);

  /// Points on a line with d(i,j) = |x_i - x_j|. Coordinates must be distinct.
  static FiniteMetricSpace on_line(const std::vector<Rational>& coords);

  /// Discrete metric d(i,j) = 1 for i != j.
  static FiniteMetricSpace discrete(std::size_t n);

  /// Builds a space from precomputed ranks; the metric axioms are the
  /// caller's responsibility (used by the hyperspace construction).
  static FiniteMetricSpace from_ranks(std::size_t n, std::vector<Rational> levels, std::vector<Rank> ranks);

  std::size_t size() const { return n_; }
  const Rational& distance(std::size_t i, std::size_t j) const { return levels_[rank(i, j)]; }
  Rank rank(std::size_t i, std::size_t j) const { return ranks_[i * n_ + j]; }
  const std::vector<Rational>& levels() const { return levels_; }
  const Rational& diameter() const { return levels_.back(); }

  /// Largest rank r with levels()[r] <= eps: d(i,j) <= eps iff rank(i,j) <= result.
  /// Returns -1 when eps < 0.
  int rank_at_most(const Rational& eps) const;

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> levels_;
  std::vector<Rank> ranks_;
};

/// Multivalued map on a finite metric space with nonempty values.
class FiniteRelation {
 public:
  FiniteRelation() = default;
  FiniteRelation(FiniteMetricSpace space, std::vector<std::vector<int>> values);

  static FiniteRelation identity(const FiniteMetricSpace& space);
  static FiniteRelation full(const FiniteMetricSpace& space);
  static FiniteRelation from_function(const FiniteMetricSpace& space, const std::vector<int>& f);

  std::size_t size() const { return space_.size(); }
  const FiniteMetricSpace& space() const { return space_; }
  const std::vector<int>& image(std::size_t x) const { return values_[x]; }
  const PointSet& image_set(std::size_t x) const { return value_sets_[x]; }
  bool contains(std::size_t x, std::size_t y) const { return value_sets_[x].test(y); }
  bool is_single_valued() const;

  /// (this ∘ inner)(x) = union of this(y) over y in inner(x).
  FiniteRelation compose_after(const FiniteRelation& inner) const;
  /// k-fold iterate; k = 0 is the identity.
  FiniteRelation power(int k) const;

  friend bool operator==(const FiniteRelation& a, const FiniteRelation& b) {
    return a.space_ == b.space_ && a.values_ == b.values_;
  }

 private:
  FiniteMetricSpace space_;
  std::vector<std::vector<int>> values_;
  std::vector<PointSet> value_sets_;
};

/// (phi ∘ psi)(x) = union over y in psi(x) of phi(y). Throws
/// std::invalid_argument for relations on different spaces.
FiniteRelation compose(const FiniteRelation& phi, const FiniteRelation& psi);

/// Exact Hausdorff distance between two nonempty subsets.
Rational hausdorff_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b);

/// The single-valued map A -> union of phi(x), x in A, on the nonempty
/// subsets of the carrier with the Hausdorff metric. State s (0-based)
/// encodes the subset with bitmask s + 1.
struct Hyperspace {
  FiniteRelation lift;
  std::size_t base_size = 0;

  static std::uint32_t mask_of_state(std::size_t state) { return static_cast<std::uint32_t>(state + 1); }
  static std::size_t state_of_mask(std::uint32_t mask) { return mask - 1; }
};

inline constexpr std::size_t kDefaultHyperspaceCap = 12;

/// Throws CapExceeded when the carrier has more than `cap` points.
Hyperspace hyperspace_lift(const FiniteRelation& phi, std::size_t cap = kDefaultHyperspaceCap);

}  // namespace mventropy
