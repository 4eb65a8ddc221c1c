#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mventropy/finite_carrier.hpp"
#include "mventropy/kernels.hpp"
#include "mventropy/measure.hpp"
#include "mventropy/pl_map.hpp"

namespace mventropy {

// A probability measure mu is invariant for phi when
// mu(phi^{-1}_+(A)) >= mu(A) for every A.

struct InvarianceResult {
  bool invariant = true;
  /// A set with mu(phi^{-1}_+(A)) < mu(A).
  std::optional<PointSet> witness;
  std::string method;
};

inline constexpr std::size_t kBruteforceInvarianceCap = 20;

/// All 2^|X| subsets; the witness is the first violating subset in bitmask
/// order. Throws CapExceeded above `cap` points.
InvarianceResult verify_invariance_bruteforce(const FiniteMeasure& mu, const FiniteRelation& phi,
                                              std::size_t cap = kBruteforceInvarianceCap);

/// Transport feasibility: source -> x (capacity mu(x)), x -> y for y in
/// phi(x) (unbounded), y -> sink (capacity mu(y)). Invariant iff the
/// maximum flow saturates. The witness comes from a minimum cut.
InvarianceResult verify_invariance_flow(const FiniteMeasure& mu, const FiniteRelation& phi);

/// Same decisions on bare data: nonnegative integer weights (any positive
/// total) and the relation as image bitmasks (bit y of images[x] set iff
/// y in phi(x)). Return the violating subset mask, if any.
std::optional<std::uint32_t> invariance_violation_bruteforce(const std::vector<std::int64_t>& weights,
                                                             const std::vector<std::uint32_t>& images);
std::optional<std::uint32_t> invariance_violation_flow(const std::vector<std::int64_t>& weights,
                                                       const std::vector<std::uint32_t>& images);

/// Uniform mixture over the closed communicating classes of the stationary
/// laws of the kernel x -> uniform on phi(x). Exact rational solve.
FiniteMeasure find_invariant_measure(const FiniteRelation& phi);

/// A finite Boolean algebra on [0,1] given by its atoms, with a sample of
/// its elements (each a set of atoms).
struct IntervalAlgebra {
  std::vector<IntervalSet> atoms;
  std::vector<PointSet> members;

  IntervalSet member(std::size_t i) const;
  std::string describe() const;
};

/// Atoms {0}, (0,1/m), {1/m}, ..., {1}; members are the empty set, [0,1],
/// every atom, then distinct pseudo-random unions (fixed seed) up to `count`.
IntervalAlgebra grid_algebra(int m, std::size_t count, std::uint64_t seed = 0x5eed);

struct A8Result {
  bool holds = true;
  std::optional<std::string> witness_a;
  std::optional<std::string> witness_b;  // absent when a single member fails
  std::size_t family_size = 0;
  std::string family;
};

/// mu(pre A) = mu(A) and mu(pre A ∩ pre B) = mu(pre(A ∩ B)) for all family
/// members A, B (pre = large preimage).
A8Result verify_A8(const FiniteMeasure& mu, const FiniteRelation& phi);  // all subsets, |X| <= 12
A8Result verify_A8(const FiniteMeasure& mu, const FiniteRelation& phi, const std::vector<PointSet>& family);
A8Result verify_A8(const IntervalMeasure& mu, const PLMultiMap& phi, const IntervalAlgebra& family);
/// Explicit families must be closed under intersection (ConfigError otherwise).
A8Result verify_A8(const IntervalMeasure& mu, const PLMultiMap& phi, const std::vector<IntervalSet>& family);

/// The equality conditions against their one-sided form
///   mu(pre A) <= mu(A),  mu(pre A ∩ pre B) <= mu(pre(A ∩ B)),
/// which are equivalent given the reverse inequalities that always hold
/// for invariant measures. `premise` records those reverse inequalities
/// on the family; when it fails the comparison is not meaningful.
struct A8FormsResult {
  bool premise = true;
  bool equality_form = true;
  bool at_most_form = true;

  bool equivalent() const { return premise && equality_form == at_most_form; }
};

A8FormsResult a8_equivalent_form_check(const FiniteMeasure& mu, const FiniteRelation& phi);
A8FormsResult a8_equivalent_form_check(const FiniteMeasure& mu, const FiniteRelation& phi,
                                       const std::vector<PointSet>& family);
A8FormsResult a8_equivalent_form_check(const IntervalMeasure& mu, const PLMultiMap& phi, const IntervalAlgebra& family);
A8FormsResult a8_equivalent_form_check(const IntervalMeasure& mu, const PLMultiMap& phi,
                                       const std::vector<IntervalSet>& family);

}  // namespace mventropy
