#pragma once

#include "mventropy/finite_carrier.hpp"
#include "mventropy/interval_set.hpp"
#include "mventropy/pl_map.hpp"
#include "mventropy/point_set.hpp"

namespace mventropy {

// Large preimage: {x : phi(x) ∩ B ≠ ∅}. Small preimage: {x : phi(x) ⊂ B}.

PointSet large_preimage(const FiniteRelation& phi, const PointSet& b);
PointSet small_preimage(const FiniteRelation& phi, const PointSet& b);
PointSet iterated_large_preimage(const FiniteRelation& phi, PointSet b, int k);

/// Solved branch by branch from the envelope inequalities
///   lower(x) <(=) sup B-piece  and  upper(x) >(=) inf B-piece,
/// strictness following the piece's boundary flags.
IntervalSet large_preimage(const PLMultiMap& phi, const IntervalSet& b);
/// Per branch, [lower(x), upper(x)] must sit inside one piece of B.
IntervalSet small_preimage(const PLMultiMap& phi, const IntervalSet& b);
IntervalSet iterated_large_preimage(const PLMultiMap& phi, IntervalSet b, int k);

/// Carrier-generic glue used by the partition and cover code.
template <class Map>
struct CarrierTraits;

template <>
struct CarrierTraits<FiniteRelation> {
  using Set = PointSet;
  static Set universe(const FiniteRelation& phi) { return full_point_set(phi.size()); }
  static Set empty_set(const FiniteRelation& phi) { return PointSet(phi.size()); }
  static bool is_empty(const Set& s) { return s.none(); }
  static bool subset(const Set& a, const Set& b) { return a.is_subset_of(b); }
  static std::string format(const Set& s) { return to_string(s); }
};

template <>
struct CarrierTraits<PLMultiMap> {
  using Set = IntervalSet;
  static Set universe(const PLMultiMap&) { return IntervalSet::unit(); }
  static Set empty_set(const PLMultiMap&) { return {}; }
  static bool is_empty(const Set& s) { return s.is_empty(); }
  static bool subset(const Set& a, const Set& b) { return a.is_subset_of(b); }
  static std::string format(const Set& s) { return s.to_string(); }
};

}  // namespace mventropy
