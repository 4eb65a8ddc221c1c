#include "mventropy/cover_entropy.hpp"

#include <iomanip>

namespace mventropy {

std::vector<PointSet> cover_elements(const Cover<PointSet>& a, std::size_t& universe) {
  universe = a.members.empty() ? 0 : a.members.front().size();
  return a.members;
}

std::vector<PointSet> cover_elements(const Cover<IntervalSet>& a, std::size_t& universe) {
  std::vector<const IntervalSet*> ptrs;
  for (const auto& m : a.members) ptrs.push_back(&m);
  auto cells = CellDecomposition::common(ptrs);
  universe = cells.size();
  std::vector<PointSet> out;
  for (const auto& m : a.members) {
    auto member = cells.membership(m);
    PointSet s(universe);
    for (std::size_t i = 0; i < universe; ++i)
      if (member[i]) s.set(i);
    out.push_back(std::move(s));
  }
  return out;
}

void CoverEntropyTable::write_csv(std::ostream& os) const {
  os << "n,join_size,N,log_N_over_n,exact\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    os << i + 1 << ',' << join_sizes[i] << ',' << counts[i].size << ',' << estimate.values[i] << ','
       << (counts[i].exact ? "true" : "false") << '\n';
  }
}

IterateRefinementResult iterate_refinement_check(const FiniteRelation& phi, const Cover<PointSet>& a, int n, int k,
                                                 const CoverOptions& opts) {
  if (n < 1 || k < 1) throw std::invalid_argument("iterate refinement needs n, k >= 1");
  auto coarse = dynamical_join(phi.power(k), a, n);
  auto fine = dynamical_join(phi, a, n * k);
  IterateRefinementResult r;
  r.refines = refines(fine, coarse);
  auto nc = minimal_subcover(coarse, opts);
  auto nf = minimal_subcover(fine, opts);
  r.coarse_count = nc.size;
  r.fine_count = nf.size;
  r.exact = nc.exact && nf.exact;
  r.count_ok = nc.size <= nf.size;
  return r;
}

Cover<PointSet> ball_cover(const FiniteMetricSpace& space, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("ball radius must be positive");
  Cover<PointSet> out;
  const std::size_t n = space.size();
  for (std::size_t x = 0; x < n; ++x) {
    PointSet ball(n);
    for (std::size_t y = 0; y < n; ++y)
      if (space.distance(x, y) < eps) ball.set(y);
    if (std::find(out.members.begin(), out.members.end(), ball) == out.members.end()) out.members.push_back(ball);
  }
  return out;
}

Cover<IntervalSet> interval_ball_cover(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("ball radius must be positive");
  Cover<IntervalSet> out;
  for (Rational c = 0;; c += eps) {
    Rational lo = c - eps, hi = c + eps;
    bool lo_closed = lo < 0, hi_closed = hi > 1;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    out.members.push_back(IntervalSet::make(lo, lo_closed, hi, hi_closed));
    if (c >= 1) break;
  }
  return out;
}

}  // namespace mventropy
