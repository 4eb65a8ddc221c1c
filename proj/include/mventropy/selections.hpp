#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mventropy/finite_carrier.hpp"
#include "mventropy/measure.hpp"
#include "mventropy/orbits.hpp"
#include "mventropy/partition.hpp"
#include "mventropy/pl_map.hpp"

namespace mventropy {

inline constexpr std::size_t kDefaultSelectionCap = 1'000'000;

struct SelectionSet {
  /// Each selection as f[x] in phi(x).
  std::vector<std::vector<int>> maps;
  /// Product of the value-set sizes (saturates at UINT64_MAX).
  std::uint64_t total = 0;
  /// True when total > cap and `maps` is a pseudo-random sample.
  bool sampled = false;
};

/// All selections in lexicographic order when their number is at most `cap`;
/// otherwise `sample_size` distinct ones drawn with a fixed seed.
SelectionSet enumerate_selections(const FiniteRelation& phi, std::size_t cap = kDefaultSelectionCap,
                                  std::size_t sample_size = 1000, std::uint64_t seed = 1);

/// The single-valued relation of a selection on phi's space.
FiniteRelation selection_relation(const FiniteRelation& phi, const std::vector<int>& f);

/// A continuous PL selection of an l.s.c. map with convex values.
///
/// Breakpoints are the critical points plus all crossings of branch
/// envelopes; f takes the midpoint of phi at each breakpoint and is linear
/// in between. Between breakpoints the value is [L, U] with L and U linear,
/// and lower semicontinuity puts both endpoint midpoints inside the one-sided
/// limits, so the chord stays inside phi. Membership is re-verified at every
/// breakpoint and cell midpoint.
///
/// Throws SelectionHypothesisError when phi is not l.s.c. or some value is
/// not an interval.
PLFunction pl_selection(const PLMultiMap& phi);

/// Wraps a function on [0,1] as a single-valued PL map.
PLMultiMap single_valued_map(const PLFunction& f);

/// Bowen estimate of a single-valued relation. Throws std::invalid_argument
/// for a multivalued one.
OrbitEntropyReport selection_entropy(const FiniteRelation& f, const std::vector<Rational>& eps_ladder, int depth,
                                     const OrbitEntropyOptions& opts = {});

/// One comparison of the level-wise sandwich table.
struct SandwichRecord {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  std::string level;
  /// "holds", "violated" or "indeterminate". Only comparisons that are exact
  /// at finite level can be "violated"; the others are diagnostics of
  /// asymptotic statements and read "indeterminate" when the numbers disagree.
  std::string verdict;
  bool asserted = false;
};

struct SandwichInput {
  std::vector<FiniteMeasure> measures;
  std::vector<OrderedPartition<PointSet>> partitions;
  std::vector<Rational> eps_ladder;
  int depth = 3;
  /// Selections beyond this many (lexicographic order) are left out.
  std::size_t selection_limit = 16;
  OrbitEntropyOptions orbit_options;
};

struct SandwichReport {
  std::vector<SandwichRecord> records;
  std::size_t selections_used = 0;
  bool selections_complete = true;

  /// No asserted comparison is violated.
  bool consistent() const;
  std::size_t count(const std::string& verdict) const;
};

SandwichReport sandwich_report(const FiniteRelation& phi, const SandwichInput& input);

}  // namespace mventropy
