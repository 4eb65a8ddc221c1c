#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mventropy/entropy_estimate.hpp"
#include "mventropy/finite_carrier.hpp"
#include "mventropy/kernels.hpp"

namespace mventropy {

inline constexpr std::size_t kDefaultOrbitCap = 10'000'000;

/// Orb_n(phi): all (x_0, ..., x_{n-1}) with x_{i+1} in phi(x_i), in
/// lexicographic order. Orb_1 is the carrier.
struct OrbitSet {
  OrbitBlock block;

  std::size_t length() const { return block.length; }
  std::size_t size() const { return block.count(); }
  std::vector<int> orbit(std::size_t i) const {
    return {block.orbit(i), block.orbit(i) + block.length};
  }
};

/// Throws CapExceeded when |Orb_n| would exceed `cap`.
OrbitSet enumerate_orbits(const FiniteRelation& phi, int n, std::size_t cap = kDefaultOrbitCap);

/// Max-coordinate distance. Throws std::invalid_argument on length mismatch.
Rational dn_distance(const FiniteMetricSpace& space, const std::vector<int>& u, const std::vector<int>& v);

struct OrbitEntropyOptions {
  std::size_t exact_threshold = 2000;
  std::size_t node_limit = 20'000'000;
  std::size_t orbit_cap = kDefaultOrbitCap;
};

/// A separated or spanning number. `witness` indexes orbits (KT) or points
/// (CM). When inexact, `value` is the solver's feasible answer and `bound`
/// the best bound on the other side.
struct CountResult {
  std::size_t value = 0;
  std::size_t bound = 0;
  bool exact = true;
  std::vector<std::size_t> witness;
};

/// Largest subset of Orb_n with pairwise d_n > eps.
CountResult s_KT(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts = {});
/// Smallest R ⊂ Orb_n with every orbit within d_n <= eps of R.
CountResult r_KT(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts = {});

/// d_n^CM(x, y): the least bottleneck max_i d(a_i, b_i) over pairs of
/// n-orbits starting at x and y.
Rational dCM_distance(const FiniteRelation& phi, std::size_t x, std::size_t y, int n);

CountResult s_CM(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts = {});
CountResult r_CM(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts = {});

struct OrbitLevel {
  Rational eps;
  int n = 0;
  std::size_t states = 0;  // orbits (KT) or points (CM)
  CountResult sep;
  CountResult span;
};

/// Per-eps sequences for n = 1..N of both counts.
struct OrbitEntropyReport {
  std::string family;  // "KT", "CM" or "hyperspace"
  std::vector<Rational> eps_ladder;
  std::vector<OrbitLevel> levels;  // eps-major, then n
  std::vector<EntropyEstimate> sep;
  std::vector<EntropyEstimate> span;
  /// span <= sep at every level.
  bool span_le_sep = true;

  const OrbitLevel& level(std::size_t eps_index, int n) const;
  double sep_sup() const;
  double span_sup() const;

  /// eps,n,s,r,log_s_over_n,log_r_over_n,exact
  void write_csv(std::ostream& os) const;
};

OrbitEntropyReport h_KT_estimate(const FiniteRelation& phi, const std::vector<Rational>& eps_ladder, int depth,
                                 const OrbitEntropyOptions& opts = {});
OrbitEntropyReport h_CM_estimate(const FiniteRelation& phi, const std::vector<Rational>& eps_ladder, int depth,
                                 const OrbitEntropyOptions& opts = {});

/// Bowen estimate of the lifted map on nonempty subsets with the Hausdorff
/// metric. Throws CapExceeded above `cap` points.
OrbitEntropyReport hyperspace_entropy(const FiniteRelation& phi, const std::vector<Rational>& eps_ladder, int depth,
                                      const OrbitEntropyOptions& opts = {}, std::size_t cap = kDefaultHyperspaceCap);

/// top/2, top/4, ... (`steps` values).
std::vector<Rational> halving_ladder(const Rational& top, int steps);

}  // namespace mventropy
