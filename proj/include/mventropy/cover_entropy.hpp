#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mventropy/entropy_estimate.hpp"
#include "mventropy/errors.hpp"
#include "mventropy/preimage.hpp"
#include "mventropy/set_cover.hpp"

namespace mventropy {

/// Finite family of carrier subsets whose union is the carrier. On [0,1]
/// members must be relatively open; on a finite carrier any subset is open.
template <class Set>
struct Cover {
  std::vector<Set> members;

  std::size_t size() const { return members.size(); }
  friend bool operator==(const Cover&, const Cover&) = default;
};

inline bool is_open_member(const PointSet&) { return true; }
inline bool is_open_member(const IntervalSet& s) { return s.is_relatively_open(); }

template <class Map>
bool covers_carrier(const Map& phi, const std::vector<typename CarrierTraits<Map>::Set>& members) {
  using T = CarrierTraits<Map>;
  auto all = T::empty_set(phi);
  for (const auto& m : members) all = set_union(all, m);
  return all == T::universe(phi);
}

/// Throws std::invalid_argument for a non-covering family or a non-open member.
template <class Map>
Cover<typename CarrierTraits<Map>::Set> make_cover(const Map& phi, std::vector<typename CarrierTraits<Map>::Set> members) {
  using T = CarrierTraits<Map>;
  for (const auto& m : members) {
    if (!is_open_member(m)) throw std::invalid_argument("cover member is not open: " + T::format(m));
  }
  if (!covers_carrier(phi, members)) throw std::invalid_argument("family does not cover the carrier");
  return {std::move(members)};
}

/// Member-wise phi^{-j}_+. Members pulling back to the empty set are dropped.
/// On [0,1] a non-open pullback (possible when phi is not l.s.c.) throws
/// OpennessViolation naming the member.
template <class Map>
Cover<typename CarrierTraits<Map>::Set> pullback_cover(const Map& phi, const Cover<typename CarrierTraits<Map>::Set>& a,
                                                       int j) {
  using T = CarrierTraits<Map>;
  if (j < 0) throw std::invalid_argument("pullback depth must be >= 0");
  Cover<typename T::Set> out;
  for (const auto& m : a.members) {
    auto pulled = iterated_large_preimage(phi, m, j);
    if (!is_open_member(pulled)) {
      throw OpennessViolation("pullback of an open member is not open: " + T::format(m) + " -> " +
                                  T::format(pulled) + " at depth " + std::to_string(j),
                              T::format(m), T::format(pulled), j);
    }
    if (!T::is_empty(pulled)) out.members.push_back(std::move(pulled));
  }
  if (!covers_carrier(phi, out.members)) throw std::logic_error("pullback family does not cover the carrier");
  return out;
}

/// All nonempty intersections, in lexicographic order of member indices,
/// duplicates removed (first occurrence kept).
template <class Set>
Cover<Set> cover_join(const Cover<Set>& a, const Cover<Set>& b) {
  Cover<Set> out;
  for (const auto& x : a.members) {
    for (const auto& y : b.members) {
      auto z = set_intersect(x, y);
      if (is_empty_set(z)) continue;
      if (std::find(out.members.begin(), out.members.end(), z) == out.members.end()) out.members.push_back(std::move(z));
    }
  }
  return out;
}

template <class Set>
Cover<Set> cover_join(const std::vector<Cover<Set>>& covers) {
  if (covers.empty()) throw std::invalid_argument("join of no covers");
  Cover<Set> out = covers.front();
  for (std::size_t i = 1; i < covers.size(); ++i) out = cover_join(out, covers[i]);
  return out;
}

/// A ∨ phi^{-1}_+(A) ∨ ... ∨ phi^{-(n-1)}_+(A).
template <class Map>
Cover<typename CarrierTraits<Map>::Set> dynamical_join(const Map& phi, const Cover<typename CarrierTraits<Map>::Set>& a,
                                                       int n) {
  if (n < 1) throw std::invalid_argument("join length must be >= 1");
  auto out = a;
  for (int j = 1; j < n; ++j) out = cover_join(out, pullback_cover(phi, a, j));
  return out;
}

struct CoverOptions {
  /// Larger (reduced) instances get greedy plus a packing lower bound.
  std::size_t exact_threshold = 22;
  std::size_t node_limit = 20'000'000;
};

/// Members as subsets of a finite element list: points, or the cells of the
/// common breakpoint decomposition on [0,1].
std::vector<PointSet> cover_elements(const Cover<PointSet>& a, std::size_t& universe);
std::vector<PointSet> cover_elements(const Cover<IntervalSet>& a, std::size_t& universe);

/// N(A): the least number of members that still cover. Throws
/// std::invalid_argument when A does not cover.
template <class Set>
SetCoverResult minimal_subcover(const Cover<Set>& a, const CoverOptions& opts = {}) {
  std::size_t universe = 0;
  auto sets = cover_elements(a, universe);
  return min_set_cover(universe, sets, {opts.exact_threshold, opts.node_limit});
}

/// True when every member of `fine` lies inside some member of `coarse`.
template <class Set>
bool refines(const Cover<Set>& fine, const Cover<Set>& coarse) {
  for (const auto& f : fine.members) {
    bool inside = false;
    for (const auto& c : coarse.members) {
      if (f.is_subset_of(c)) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

struct CoverEntropyTable {
  std::vector<std::size_t> join_sizes;
  std::vector<SetCoverResult> counts;
  EntropyEstimate estimate;

  /// n,join_size,N,log_N_over_n,exact
  void write_csv(std::ostream& os) const;
};

/// (1/n) log N(A^n) for n = 1..N.
template <class Map>
CoverEntropyTable h_plus_estimate(const Map& phi, const Cover<typename CarrierTraits<Map>::Set>& a, int depth,
                                  const CoverOptions& opts = {}) {
  if (depth < 1) throw std::invalid_argument("cover entropy depth must be >= 1");
  CoverEntropyTable t;
  std::vector<double> totals;
  bool exact = true;
  auto join = a;
  for (int n = 1; n <= depth; ++n) {
    if (n > 1) join = cover_join(join, pullback_cover(phi, a, n - 1));
    auto c = minimal_subcover(join, opts);
    exact = exact && c.exact;
    t.join_sizes.push_back(join.size());
    totals.push_back(std::log(static_cast<double>(c.size)));
    t.counts.push_back(std::move(c));
  }
  t.estimate = EntropyEstimate::from_totals(std::move(totals), exact);
  t.estimate.params = {{"depth", std::to_string(depth)}, {"cover_size", std::to_string(a.size())}};
  return t;
}

struct IterateRefinementResult {
  bool refines = false;   // the phi-join refines the phi^k-join
  bool count_ok = false;  // N(phi^k-join) <= N(phi-join)
  std::size_t coarse_count = 0;
  std::size_t fine_count = 0;
  bool exact = true;

  bool ok() const { return refines && count_ok; }
};

/// Compares ⋁_{i<n} (phi^k)^{-i}_+(A) with ⋁_{j<nk} phi^{-j}_+(A) on a finite carrier.
IterateRefinementResult iterate_refinement_check(const FiniteRelation& phi, const Cover<PointSet>& a, int n, int k,
                                                 const CoverOptions& opts = {1u << 20, 20'000'000});

/// Open eps-balls {y : d(x,y) < eps} around every point, duplicates removed.
Cover<PointSet> ball_cover(const FiniteMetricSpace& space, const Rational& eps);

/// (c - eps, c + eps) ∩ [0,1] for c = 0, eps, 2 eps, ..., up to the first c >= 1.
Cover<IntervalSet> interval_ball_cover(const Rational& eps);

}  // namespace mventropy
