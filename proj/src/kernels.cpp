#include "mventropy/kernels.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace mventropy {

MaskTable MaskTable::from_point_sets(const std::vector<PointSet>& sets, std::size_t universe) {
  MaskTable t;
  t.words = std::max<std::size_t>(1, (universe + 63) / 64);
  t.data.assign(sets.size() * t.words, 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto b = sets[i].find_first(); b != PointSet::npos; b = sets[i].find_next(b)) {
      t.data[i * t.words + b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
  return t;
}

std::vector<std::int64_t> scale_to_integers(const std::vector<Rational>& values) {
  mpz_class lcm = 1;
  for (const auto& v : values) {
    if (v < 0) throw std::invalid_argument("scale_to_integers: negative value");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  // Headroom so that sums over up to 2^20 terms stay representable.
  const mpz_class limit = mpz_class(1) << 42;
  mpz_class total = 0;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    mpz_class scaled = v.get_num() * (lcm / v.get_den());
    total += scaled;
    if (scaled > limit || total > limit) throw std::overflow_error("scale_to_integers: weights too fine for 64-bit scan");
    out.push_back(scaled.get_si());
  }
  return out;
}

namespace {

bool orbits_close(const FiniteMetricSpace& space, const int* a, const int* b, std::size_t len, int max_rank) {
  for (std::size_t k = 0; k < len; ++k)
    if (static_cast<int>(space.rank(a[k], b[k])) > max_rank) return false;
  return true;
}

void fill_close_row(const FiniteMetricSpace& space, const OrbitBlock& orbits, int max_rank, std::size_t i,
                    PointSet& row) {
  const std::size_t m = orbits.count();
  for (std::size_t j = 0; j < m; ++j)
    if (orbits_close(space, orbits.orbit(i), orbits.orbit(j), orbits.length, max_rank)) row.set(j);
}

Rank cm_cell(const FiniteRelation& phi, const std::vector<Rank>& prev, std::size_t n, std::size_t a, std::size_t b) {
  Rank best = std::numeric_limits<Rank>::max();
  for (int x : phi.image(a))
    for (int y : phi.image(b)) best = std::min(best, prev[x * n + y]);
  return std::max(phi.space().rank(a, b), best);
}

std::int64_t weight_of_mask(std::uint32_t mask, const std::vector<std::int64_t>& w) {
  std::int64_t s = 0;
  while (mask) {
    int b = std::countr_zero(mask);
    s += w[b];
    mask &= mask - 1;
  }
  return s;
}

bool invariance_fails(std::uint32_t a, const std::vector<std::int64_t>& w, const std::vector<std::uint32_t>& pre) {
  std::uint32_t p = 0;
  for (std::uint32_t rest = a; rest; rest &= rest - 1) p |= pre[std::countr_zero(rest)];
  return weight_of_mask(p, w) < weight_of_mask(a, w);
}

std::int64_t weight_of_row(const std::uint64_t* row, std::size_t words, const std::vector<std::int64_t>& w) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < words; ++k) {
    for (std::uint64_t bits = row[k]; bits; bits &= bits - 1) s += w[k * 64 + std::countr_zero(bits)];
  }
  return s;
}

bool compare_fails(std::int64_t lhs, std::int64_t rhs, A8Compare cmp) {
  switch (cmp) {
    case A8Compare::Equal:
      return lhs != rhs;
    case A8Compare::AtMost:
      return lhs > rhs;
    case A8Compare::AtLeast:
      return lhs < rhs;
  }
  return true;
}

bool single_fails(const A8Tables& t, std::size_t i, A8Compare cmp) {
  return compare_fails(weight_of_row(t.member_pre.row(i), t.member_pre.words, t.cell_weight),
                       weight_of_row(t.member_atoms.row(i), t.member_atoms.words, t.atom_weight), cmp);
}

// mu(pre A ∩ pre B) versus mu(pre(A ∩ B)); `buf` holds member_pre.words words.
bool pair_fails(const A8Tables& t, std::size_t i, std::size_t j, std::vector<std::uint64_t>& buf, A8Compare cmp) {
  const std::size_t cw = t.member_pre.words;
  const std::uint64_t* pa = t.member_pre.row(i);
  const std::uint64_t* pb = t.member_pre.row(j);
  std::int64_t lhs = 0;
  for (std::size_t k = 0; k < cw; ++k) {
    for (std::uint64_t bits = pa[k] & pb[k]; bits; bits &= bits - 1) lhs += t.cell_weight[k * 64 + std::countr_zero(bits)];
  }
  std::fill(buf.begin(), buf.end(), 0);
  const std::uint64_t* aa = t.member_atoms.row(i);
  const std::uint64_t* ab = t.member_atoms.row(j);
  for (std::size_t k = 0; k < t.member_atoms.words; ++k) {
    for (std::uint64_t bits = aa[k] & ab[k]; bits; bits &= bits - 1) {
      const std::uint64_t* pre = t.atom_pre.row(k * 64 + std::countr_zero(bits));
      for (std::size_t c = 0; c < cw; ++c) buf[c] |= pre[c];
    }
  }
  return compare_fails(lhs, weight_of_row(buf.data(), cw, t.cell_weight), cmp);
}

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

}  // namespace

namespace serial {

std::vector<PointSet> close_matrix(const FiniteMetricSpace& space, const OrbitBlock& orbits, int max_rank) {
  const std::size_t m = orbits.count();
  std::vector<PointSet> rows(m, PointSet(m));
  for (std::size_t i = 0; i < m; ++i) fill_close_row(space, orbits, max_rank, i, rows[i]);
  return rows;
}

std::vector<Rank> cm_ranks(const FiniteRelation& phi, int n) {
  if (n < 1) throw std::invalid_argument("cm_ranks: n must be >= 1");
  const std::size_t sz = phi.size();
  std::vector<Rank> cur(sz * sz);
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b) cur[a * sz + b] = phi.space().rank(a, b);
  std::vector<Rank> next(sz * sz);
  for (int k = 2; k <= n; ++k) {
    for (std::size_t a = 0; a < sz; ++a)
      for (std::size_t b = 0; b < sz; ++b) next[a * sz + b] = cm_cell(phi, cur, sz, a, b);
    cur.swap(next);
  }
  return cur;
}

std::optional<std::uint32_t> first_invariance_violation(const std::vector<std::int64_t>& weights,
                                                        const std::vector<std::uint32_t>& pre) {
  const std::size_t n = weights.size();
  if (n > 31) throw std::invalid_argument("invariance scan supports at most 31 points");
  const std::uint32_t end = std::uint32_t{1} << n;
  for (std::uint32_t a = 1; a < end; ++a)
    if (invariance_fails(a, weights, pre)) return a;
  return std::nullopt;
}

std::optional<A8Failure> first_a8_failure(const A8Tables& t, A8Compare cmp) {
  const std::size_t m = t.member_atoms.rows();
  for (std::size_t i = 0; i < m; ++i)
    if (single_fails(t, i, cmp)) return A8Failure{i, std::nullopt};
  std::vector<std::uint64_t> buf(t.member_pre.words);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      if (pair_fails(t, i, j, buf, cmp)) return A8Failure{i, j};
  return std::nullopt;
}

}  // namespace serial

namespace parallel {

std::vector<PointSet> close_matrix(const FiniteMetricSpace& space, const OrbitBlock& orbits, int max_rank) {
  const std::size_t m = orbits.count();
  std::vector<PointSet> rows(m, PointSet(m));
  const long long mm = static_cast<long long>(m);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < mm; ++i) fill_close_row(space, orbits, max_rank, static_cast<std::size_t>(i), rows[i]);
  return rows;
}

std::vector<Rank> cm_ranks(const FiniteRelation& phi, int n) {
  if (n < 1) throw std::invalid_argument("cm_ranks: n must be >= 1");
  const std::size_t sz = phi.size();
  std::vector<Rank> cur(sz * sz);
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b) cur[a * sz + b] = phi.space().rank(a, b);
  std::vector<Rank> next(sz * sz);
  const long long total = static_cast<long long>(sz * sz);
  for (int k = 2; k <= n; ++k) {
#pragma omp parallel for schedule(static)
    for (long long ab = 0; ab < total; ++ab) {
      std::size_t a = static_cast<std::size_t>(ab) / sz, b = static_cast<std::size_t>(ab) % sz;
      next[ab] = cm_cell(phi, cur, sz, a, b);
    }
    cur.swap(next);
  }
  return cur;
}

std::optional<std::uint32_t> first_invariance_violation(const std::vector<std::int64_t>& weights,
                                                        const std::vector<std::uint32_t>& pre) {
  const std::size_t n = weights.size();
  if (n > 31) throw std::invalid_argument("invariance scan supports at most 31 points");
  const long long end = 1LL << n;
  std::uint64_t best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (long long a = 1; a < end; ++a) {
    if (static_cast<std::uint64_t>(a) < best && invariance_fails(static_cast<std::uint32_t>(a), weights, pre))
      best = static_cast<std::uint64_t>(a);
  }
  if (best == kNone) return std::nullopt;
  return static_cast<std::uint32_t>(best);
}

std::optional<A8Failure> first_a8_failure(const A8Tables& t, A8Compare cmp) {
  const long long m = static_cast<long long>(t.member_atoms.rows());
  std::uint64_t single = kNone;
#pragma omp parallel for schedule(static) reduction(min : single)
  for (long long i = 0; i < m; ++i)
    if (single_fails(t, static_cast<std::size_t>(i), cmp)) single = std::min<std::uint64_t>(single, i);
  if (single != kNone) return A8Failure{static_cast<std::size_t>(single), std::nullopt};

  std::uint64_t best = kNone;
#pragma omp parallel reduction(min : best)
  {
    std::vector<std::uint64_t> buf(t.member_pre.words);
#pragma omp for schedule(dynamic, 8)
    for (long long i = 0; i < m; ++i) {
      for (long long j = i; j < m; ++j) {
        const std::uint64_t code = static_cast<std::uint64_t>(i) * m + j;
        if (code >= best) break;
        if (pair_fails(t, i, j, buf, cmp)) {
          best = code;
          break;
        }
      }
    }
  }
  if (best == kNone) return std::nullopt;
  return A8Failure{static_cast<std::size_t>(best / m), static_cast<std::size_t>(best % m)};
}

}  // namespace parallel

}  // namespace mventropy
