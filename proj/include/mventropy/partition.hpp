#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mventropy/entropy_estimate.hpp"
#include "mventropy/measure.hpp"
#include "mventropy/preimage.hpp"

namespace mventropy {

/// Ordered family of pairwise disjoint nonempty sets covering the carrier.
/// Order matters: it drives the disjointification of pulled-back members.
template <class Set>
struct OrderedPartition {
  std::vector<Set> pieces;

  std::size_t size() const { return pieces.size(); }
  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// x·log x with Φ(0) = 0 (natural log). Throws std::domain_error for x < 0.
double phi_fn(double x);
double phi_fn(const Rational& x);

/// True when `pieces` are nonempty, pairwise disjoint and cover the carrier.
template <class Map>
bool is_partition(const Map& phi, const std::vector<typename CarrierTraits<Map>::Set>& pieces) {
  using T = CarrierTraits<Map>;
  auto covered = T::empty_set(phi);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (T::is_empty(pieces[i])) return false;
    if (!T::is_empty(set_intersect(covered, pieces[i]))) return false;
    covered = set_union(covered, pieces[i]);
  }
  return covered == T::universe(phi);
}

/// Validates and wraps; throws std::invalid_argument.
template <class Map>
OrderedPartition<typename CarrierTraits<Map>::Set> make_partition(const Map& phi,
                                                                  std::vector<typename CarrierTraits<Map>::Set> pieces) {
  if (!is_partition(phi, pieces)) throw std::invalid_argument("not a partition of the carrier");
  return {std::move(pieces)};
}

/// H_mu(P) = -Σ Φ(mu(P_i)).
template <class Measure, class Set>
double partition_entropy(const Measure& mu, const OrderedPartition<Set>& p) {
  double h = 0.0;
  for (const auto& piece : p.pieces) h -= phi_fn(measure_of(mu, piece));
  return h;
}

/// H_mu(P | beta) = -Σ_i Σ_j mu(D_i) Φ(mu(D_i ∩ P_j) / mu(D_i)); null D_i contribute 0.
template <class Measure, class Set>
double conditional_entropy(const Measure& mu, const OrderedPartition<Set>& p, const OrderedPartition<Set>& beta) {
  double h = 0.0;
  for (const auto& d : beta.pieces) {
    Rational md = measure_of(mu, d);
    if (md == 0) continue;
    for (const auto& piece : p.pieces) {
      Rational ratio = measure_of(mu, set_intersect(d, piece)) / md;
      h -= to_double(md) * phi_fn(ratio);
    }
  }
  return h;
}

/// Number of pieces of positive measure.
template <class Measure, class Set>
std::size_t nz_count(const Measure& mu, const OrderedPartition<Set>& p) {
  std::size_t n = 0;
  for (const auto& piece : p.pieces)
    if (measure_of(mu, piece) > 0) ++n;
  return n;
}

inline constexpr double kEntropyBoundSlack = 1e-12;

/// H_mu(P) <= log NZ(P) + slack.
template <class Measure, class Set>
bool lemma1_check(const Measure& mu, const OrderedPartition<Set>& p, double slack = kEntropyBoundSlack) {
  std::size_t nz = nz_count(mu, p);
  double bound = nz == 0 ? 0.0 : std::log(static_cast<double>(nz));
  return partition_entropy(mu, p) <= bound + slack;
}

/// The k-th disjointified pullback: member j is phi^{-k}_+(P_j) minus the
/// pullbacks of all earlier members; empty members are dropped. k = 0 gives P.
template <class Map>
OrderedPartition<typename CarrierTraits<Map>::Set> disjointify(const Map& phi,
                                                               const OrderedPartition<typename CarrierTraits<Map>::Set>& p,
                                                               int k) {
  using T = CarrierTraits<Map>;
  if (k < 0) throw std::invalid_argument("disjointify depth must be >= 0");
  if (k == 0) return p;
  OrderedPartition<typename T::Set> out;
  auto earlier = T::empty_set(phi);
  for (const auto& piece : p.pieces) {
    auto pulled = iterated_large_preimage(phi, piece, k);
    auto fresh = set_difference(pulled, earlier);
    earlier = set_union(earlier, pulled);
    if (!T::is_empty(fresh)) out.pieces.push_back(std::move(fresh));
  }
  return out;
}

/// All nonempty intersections, ordered lexicographically by member indices.
template <class Set>
OrderedPartition<Set> join2(const OrderedPartition<Set>& a, const OrderedPartition<Set>& b) {
  OrderedPartition<Set> out;
  for (const auto& x : a.pieces) {
    for (const auto& y : b.pieces) {
      auto z = set_intersect(x, y);
      if (!is_empty_set(z)) out.pieces.push_back(std::move(z));
    }
  }
  return out;
}

template <class Set>
OrderedPartition<Set> join(const std::vector<OrderedPartition<Set>>& parts) {
  if (parts.empty()) throw std::invalid_argument("join of no partitions");
  OrderedPartition<Set> out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = join2(out, parts[i]);
  return out;
}

/// P'_1, ..., P'_N with P'_k = P̃_0 ∨ ... ∨ P̃_{k-1}. Each level is checked
/// to be an exact partition; a failure throws std::logic_error.
template <class Map>
std::vector<OrderedPartition<typename CarrierTraits<Map>::Set>> refinement_sequence(
    const Map& phi, const OrderedPartition<typename CarrierTraits<Map>::Set>& p, int depth) {
  if (depth < 1) throw std::invalid_argument("refinement depth must be >= 1");
  std::vector<OrderedPartition<typename CarrierTraits<Map>::Set>> out;
  out.push_back(p);
  for (int k = 1; k < depth; ++k) {
    out.push_back(join2(out.back(), disjointify(phi, p, k)));
    if (!is_partition(phi, out.back().pieces)) {
      throw std::logic_error("refinement level " + std::to_string(k + 1) + " is not a partition");
    }
  }
  return out;
}

struct MetricEntropyTable {
  std::vector<std::size_t> cards;
  std::vector<double> entropies;
  EntropyEstimate estimate;

  /// n,card,H,H_over_n
  void write_csv(std::ostream& os) const;
};

/// (1/n) H_mu(P'_n) for n = 1..N.
template <class Map, class Measure>
MetricEntropyTable metric_entropy_estimate(const Measure& mu, const Map& phi,
                                           const OrderedPartition<typename CarrierTraits<Map>::Set>& p, int depth) {
  if (depth < 1) throw std::invalid_argument("metric entropy depth must be >= 1");
  MetricEntropyTable t;
  for (const auto& level : refinement_sequence(phi, p, depth)) {
    t.cards.push_back(level.size());
    t.entropies.push_back(partition_entropy(mu, level));
  }
  t.estimate = EntropyEstimate::from_totals(t.entropies);
  t.estimate.params = {{"depth", std::to_string(depth)}, {"partition_size", std::to_string(p.size())}};
  return t;
}

/// [0,1/m], (1/m,2/m], ..., ((m-1)/m,1].
OrderedPartition<IntervalSet> uniform_interval_partition(int m);
/// Contiguous index blocks of near-equal size (m clipped to n).
OrderedPartition<PointSet> uniform_point_partition(std::size_t n, int m);

}  // namespace mventropy
