#pragma once

#include <utility>
#include <vector>

#include "mventropy/interval_set.hpp"
#include "mventropy/point_set.hpp"
#include "mventropy/rational.hpp"

namespace mventropy {

/// Probability measure on a finite carrier: one exact weight per point.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  /// Throws std::invalid_argument unless weights are >= 0 and sum to 1.
  explicit FiniteMeasure(std::vector<Rational> weights);

  static FiniteMeasure uniform(std::size_t n);
  static FiniteMeasure point_mass(std::size_t n, std::size_t at);
  /// Normalizes nonnegative integer weights (not all zero).
  static FiniteMeasure from_counts(const std::vector<long>& counts);

  std::size_t size() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }

  Rational measure(const PointSet& s) const;

  friend bool operator==(const FiniteMeasure&, const FiniteMeasure&) = default;

 private:
  std::vector<Rational> weights_;
};

/// Probability measure on [0,1]: piecewise-constant density plus atoms.
class IntervalMeasure {
 public:
  struct DensityPiece {
    Rational lo;
    Rational hi;
    Rational density;
  };
  struct Atom {
    Rational at;
    Rational mass;
  };

  IntervalMeasure() = default;
  /// Density pieces must be non-overlapping; total mass must be 1.
  IntervalMeasure(std::vector<DensityPiece> density, std::vector<Atom> atoms);

  static IntervalMeasure lebesgue();

  const std::vector<DensityPiece>& density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

  Rational measure(const IntervalSet& s) const;

 private:
  std::vector<DensityPiece> density_;
  std::vector<Atom> atoms_;
};

inline Rational measure_of(const FiniteMeasure& mu, const PointSet& s) { return mu.measure(s); }
inline Rational measure_of(const IntervalMeasure& mu, const IntervalSet& s) { return mu.measure(s); }

}  // namespace mventropy
