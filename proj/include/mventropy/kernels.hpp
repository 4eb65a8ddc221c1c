#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mventropy/finite_carrier.hpp"
#include "mventropy/point_set.hpp"
#include "mventropy/rational.hpp"

// Hot loops, each in a serial reference version and an OpenMP version with
// identical results. Library code calls the parallel versions; the tests and
// the benchmark compare both.

namespace mventropy {

using Rank = FiniteMetricSpace::Rank;

/// Orbits of equal length stored back to back: orbit i occupies
/// points[i*length, (i+1)*length).
struct OrbitBlock {
  std::size_t length = 0;
  std::vector<int> points;

  std::size_t count() const { return length == 0 ? 0 : points.size() / length; }
  const int* orbit(std::size_t i) const { return points.data() + i * length; }
};

/// Subsets of a universe as flat 64-bit words, `words` per row.
struct MaskTable {
  std::size_t words = 0;
  std::vector<std::uint64_t> data;

  std::size_t rows() const { return words == 0 ? 0 : data.size() / words; }
  const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }
  std::uint64_t* row(std::size_t i) { return data.data() + i * words; }

  static MaskTable from_point_sets(const std::vector<PointSet>& sets, std::size_t universe);
};

/// Input of the strong-invariance pair scan. Members are subsets of a finite family of
/// atoms; every atom's large preimage is a set of cells. Weights are the
/// cell and atom measures on one common integer scale.
struct A8Tables {
  MaskTable member_atoms;   // member -> atoms
  MaskTable member_pre;     // member -> cells of its large preimage
  MaskTable atom_pre;       // atom -> cells of its large preimage
  std::vector<std::int64_t> cell_weight;
  std::vector<std::int64_t> atom_weight;
};

/// First failure of a strong-invariance scan. `second` is absent for the single-member
/// equality mu(pre A) = mu(A).
struct A8Failure {
  std::size_t first = 0;
  std::optional<std::size_t> second;
  friend bool operator==(const A8Failure&, const A8Failure&) = default;
};

/// How the scanned quantities must compare: for a single member
/// w(pre A) ? w(A), for a pair w(pre A ∩ pre B) ? w(pre(A ∩ B)).
enum class A8Compare { Equal, AtMost, AtLeast };

/// Common-denominator integer form of nonnegative rationals. Throws
/// std::overflow_error when the scaled values do not fit comfortably in 64 bits.
std::vector<std::int64_t> scale_to_integers(const std::vector<Rational>& values);

namespace serial {

/// close[i] has bit j iff d_n(orbit i, orbit j) has rank <= max_rank.
std::vector<PointSet> close_matrix(const FiniteMetricSpace& space, const OrbitBlock& orbits, int max_rank);

/// Ranks of d_n^CM for all pairs (row-major |X| x |X|).
std::vector<Rank> cm_ranks(const FiniteRelation& phi, int n);

/// Smallest subset mask A (1 <= A < 2^|X|) with w(pre A) < w(A), where
/// pre A is the union of `preimage_of_point` over the members of A.
std::optional<std::uint32_t> first_invariance_violation(const std::vector<std::int64_t>& weights,
                                                        const std::vector<std::uint32_t>& preimage_of_point);

/// Single members first, then pairs i <= j in lexicographic order.
std::optional<A8Failure> first_a8_failure(const A8Tables& t, A8Compare cmp = A8Compare::Equal);

}  // namespace serial

namespace parallel {

std::vector<PointSet> close_matrix(const FiniteMetricSpace& space, const OrbitBlock& orbits, int max_rank);
std::vector<Rank> cm_ranks(const FiniteRelation& phi, int n);
std::optional<std::uint32_t> first_invariance_violation(const std::vector<std::int64_t>& weights,
                                                        const std::vector<std::uint32_t>& preimage_of_point);
std::optional<A8Failure> first_a8_failure(const A8Tables& t, A8Compare cmp = A8Compare::Equal);

}  // namespace parallel

}  // namespace mventropy
