#include "mventropy/invariance.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include <bit>
#include <random>
#include <set>
#include <stdexcept>

#include "mventropy/errors.hpp"
#include "mventropy/max_flow.hpp"
#include "mventropy/preimage.hpp"

namespace mventropy {

namespace {

std::vector<std::uint32_t> image_masks(const FiniteRelation& phi) {
  std::vector<std::uint32_t> out(phi.size(), 0);
  for (std::size_t x = 0; x < phi.size(); ++x)
    for (int y : phi.image(x)) out[x] |= std::uint32_t{1} << y;
  return out;
}

PointSet mask_to_set(std::uint32_t mask, std::size_t n) {
  PointSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) s.set(i);
  return s;
}

std::vector<std::int64_t> integer_weights(const FiniteMeasure& mu) { return scale_to_integers(mu.weights()); }

}  // namespace

std::optional<std::uint32_t> invariance_violation_bruteforce(const std::vector<std::int64_t>& weights,
                                                             const std::vector<std::uint32_t>& images) {
  const std::size_t n = weights.size();
  std::vector<std::uint32_t> pre(n, 0);  // pre[y] = {x : y in phi(x)}
  for (std::size_t x = 0; x < n; ++x)
    for (std::uint32_t m = images[x]; m; m &= m - 1) pre[std::countr_zero(m)] |= std::uint32_t{1} << x;
  return parallel::first_invariance_violation(weights, pre);
}

namespace {

// Right-hand nodes off the source side of a minimum cut form a set A whose
// large preimage lies off the source side too, so mu(pre A) < mu(A).
std::optional<PointSet> flow_violation(const std::vector<std::int64_t>& w, const std::vector<std::vector<int>>& images) {
  const std::size_t n = w.size();
  const std::size_t source = 2 * n, sink = 2 * n + 1;
  MaxFlow flow(2 * n + 2);
  std::int64_t total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    total += w[x];
    flow.add_edge(source, x, w[x]);
    flow.add_edge(n + x, sink, w[x]);
    for (int y : images[x]) flow.add_edge(x, n + y, MaxFlow::kInfinite);
  }
  if (flow.run(source, sink) == total) return std::nullopt;
  auto side = flow.source_side(source);
  PointSet a(n);
  for (std::size_t y = 0; y < n; ++y)
    if (!side[n + y]) a.set(y);
  return a;
}

}  // namespace

std::optional<std::uint32_t> invariance_violation_flow(const std::vector<std::int64_t>& weights,
                                                       const std::vector<std::uint32_t>& images) {
  std::vector<std::vector<int>> lists(images.size());
  for (std::size_t x = 0; x < images.size(); ++x)
    for (std::uint32_t m = images[x]; m; m &= m - 1) lists[x].push_back(std::countr_zero(m));
  auto bad = flow_violation(weights, lists);
  if (!bad) return std::nullopt;
  std::uint32_t a = 0;
  for (auto y = bad->find_first(); y != PointSet::npos; y = bad->find_next(y)) a |= std::uint32_t{1} << y;
  return a;
}

InvarianceResult verify_invariance_bruteforce(const FiniteMeasure& mu, const FiniteRelation& phi, std::size_t cap) {
  if (mu.size() != phi.size()) throw std::invalid_argument("measure and relation live on different carriers");
  if (phi.size() > cap)
    throw CapExceeded("brute-force invariance check is capped at " + std::to_string(cap) + " points");
  InvarianceResult r;
  r.method = "bruteforce";
  if (auto bad = invariance_violation_bruteforce(integer_weights(mu), image_masks(phi))) {
    r.invariant = false;
    r.witness = mask_to_set(*bad, phi.size());
  }
  return r;
}

InvarianceResult verify_invariance_flow(const FiniteMeasure& mu, const FiniteRelation& phi) {
  if (mu.size() != phi.size()) throw std::invalid_argument("measure and relation live on different carriers");
  InvarianceResult r;
  r.method = "flow";
  std::vector<std::vector<int>> lists;
  for (std::size_t x = 0; x < phi.size(); ++x) lists.push_back(phi.image(x));
  if (auto bad = flow_violation(integer_weights(mu), lists)) {
    r.invariant = false;
    r.witness = *bad;
  }
  return r;
}

namespace {

// Solves the square system m * x = rhs exactly; m must be nonsingular.
std::vector<Rational> solve_exact(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const std::size_t k = rhs.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) throw std::logic_error("singular stationary system");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

}  // namespace

FiniteMeasure find_invariant_measure(const FiniteRelation& phi) {
  const std::size_t n = phi.size();
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  for (std::size_t x = 0; x < n; ++x)
    for (int y : phi.image(x)) boost::add_edge(x, static_cast<std::size_t>(y), g);
  std::vector<int> comp(n);
  const int ncomp = boost::strong_components(g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g)));

  std::vector<bool> closed(ncomp, true);
  for (std::size_t x = 0; x < n; ++x)
    for (int y : phi.image(x))
      if (comp[y] != comp[x]) closed[comp[x]] = false;
  int nclosed = 0;
  for (bool c : closed) nclosed += c;

  std::vector<Rational> weights(n, Rational(0));
  for (int c = 0; c < ncomp; ++c) {
    if (!closed[c]) continue;
    std::vector<std::size_t> members;
    std::vector<int> local(n, -1);
    for (std::size_t x = 0; x < n; ++x)
      if (comp[x] == c) {
        local[x] = static_cast<int>(members.size());
        members.push_back(x);
      }
    const std::size_t k = members.size();
    // pi K = pi, with the last balance equation replaced by sum(pi) = 1.
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> rhs(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
      const auto& img = phi.image(members[i]);
      Rational p(1, static_cast<unsigned long>(img.size()));
      for (int y : img) m[local[y]][i] += p;
      m[i][i] -= 1;
    }
    for (std::size_t i = 0; i < k; ++i) m[k - 1][i] = 1;
    rhs[k - 1] = 1;
    auto pi = solve_exact(std::move(m), std::move(rhs));
    for (std::size_t i = 0; i < k; ++i) weights[members[i]] = pi[i] / nclosed;
  }
  for (auto& w : weights) w.canonicalize();
  return FiniteMeasure(std::move(weights));
}

IntervalSet IntervalAlgebra::member(std::size_t i) const {
  std::vector<Interval> raw;
  const PointSet& m = members.at(i);
  for (auto a = m.find_first(); a != PointSet::npos; a = m.find_next(a))
    for (const auto& piece : atoms[a].pieces()) raw.push_back(piece);
  return IntervalSet::normalize(raw);
}

std::string IntervalAlgebra::describe() const {
  return "interval algebra with " + std::to_string(atoms.size()) + " atoms, " + std::to_string(members.size()) +
         " members";
}

IntervalAlgebra grid_algebra(int m, std::size_t count, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("grid algebra needs m >= 1");
  IntervalAlgebra alg;
  for (int i = 0; i <= m; ++i) {
    alg.atoms.push_back(IntervalSet::point(ratio(i, m)));
    if (i < m) alg.atoms.push_back(IntervalSet::open(ratio(i, m), ratio(i + 1, m)));
  }
  const std::size_t na = alg.atoms.size();
  if (na < 63 && count > (std::size_t{1} << na)) throw std::invalid_argument("grid algebra has fewer elements than requested");

  std::set<PointSet> seen;
  auto add = [&](PointSet s) {
    if (alg.members.size() < count && seen.insert(s).second) alg.members.push_back(std::move(s));
  };
  add(PointSet(na));
  add(full_point_set(na));
  for (std::size_t a = 0; a < na; ++a) {
    PointSet s(na);
    s.set(a);
    add(s);
  }
  std::mt19937_64 rng(seed);
  while (alg.members.size() < count) {
    PointSet s(na);
    for (std::size_t a = 0; a < na; ++a)
      if (rng() >> 63) s.set(a);
    add(s);
  }
  return alg;
}

namespace {

// Atom-level tables for the integer scans.
struct A8Setup {
  A8Tables tables;
  std::vector<std::string> member_names;
};

A8Setup finite_setup(const FiniteMeasure& mu, const FiniteRelation& phi, const std::vector<PointSet>& family) {
  const std::size_t n = phi.size();
  if (mu.size() != n) throw std::invalid_argument("measure and relation live on different carriers");
  A8Setup s;
  std::vector<PointSet> atom_pre;
  for (std::size_t x = 0; x < n; ++x) atom_pre.push_back(large_preimage(phi, make_point_set(n, {static_cast<int>(x)})));
  std::vector<PointSet> member_pre;
  for (const auto& a : family) {
    if (a.size() != n) throw std::invalid_argument("family member on a different carrier");
    member_pre.push_back(large_preimage(phi, a));
    s.member_names.push_back(to_string(a));
  }
  s.tables.member_atoms = MaskTable::from_point_sets(family, n);
  s.tables.member_pre = MaskTable::from_point_sets(member_pre, n);
  s.tables.atom_pre = MaskTable::from_point_sets(atom_pre, n);
  s.tables.cell_weight = scale_to_integers(mu.weights());
  s.tables.atom_weight = s.tables.cell_weight;
  return s;
}

A8Setup interval_setup(const IntervalMeasure& mu, const PLMultiMap& phi, const IntervalAlgebra& alg) {
  A8Setup s;
  std::vector<IntervalSet> pre;
  for (const auto& atom : alg.atoms) pre.push_back(large_preimage(phi, atom));
  std::vector<const IntervalSet*> ptrs;
  for (const auto& p : pre) ptrs.push_back(&p);
  auto cells = CellDecomposition::common(ptrs);
  const std::size_t nc = cells.size(), na = alg.atoms.size();

  std::vector<PointSet> atom_pre;
  for (const auto& p : pre) {
    auto member = cells.membership(p);
    PointSet row(nc);
    for (std::size_t c = 0; c < nc; ++c)
      if (member[c]) row.set(c);
    atom_pre.push_back(std::move(row));
  }
  std::vector<PointSet> member_pre;
  for (std::size_t i = 0; i < alg.members.size(); ++i) {
    const auto& m = alg.members[i];
    if (m.size() != na) throw std::invalid_argument("algebra member over the wrong atom count");
    PointSet row(nc);
    for (auto a = m.find_first(); a != PointSet::npos; a = m.find_next(a)) row |= atom_pre[a];
    member_pre.push_back(std::move(row));
    s.member_names.push_back(alg.member(i).to_string());
  }

  // Cells and atoms on one integer scale.
  std::vector<Rational> all;
  for (std::size_t c = 0; c < nc; ++c) all.push_back(mu.measure(cells.cell(c)));
  for (const auto& a : alg.atoms) all.push_back(mu.measure(a));
  auto scaled = scale_to_integers(all);
  s.tables.cell_weight.assign(scaled.begin(), scaled.begin() + static_cast<long>(nc));
  s.tables.atom_weight.assign(scaled.begin() + static_cast<long>(nc), scaled.end());
  s.tables.member_atoms = MaskTable::from_point_sets(alg.members, na);
  s.tables.member_pre = MaskTable::from_point_sets(member_pre, nc);
  s.tables.atom_pre = MaskTable::from_point_sets(atom_pre, nc);
  return s;
}

A8Result scan_a8(const A8Setup& s, std::string family) {
  A8Result r;
  r.family_size = s.member_names.size();
  r.family = std::move(family);
  if (auto bad = parallel::first_a8_failure(s.tables, A8Compare::Equal)) {
    r.holds = false;
    r.witness_a = s.member_names[bad->first];
    if (bad->second) r.witness_b = s.member_names[*bad->second];
  }
  return r;
}

A8FormsResult scan_forms(const A8Setup& s) {
  A8FormsResult r;
  r.premise = !parallel::first_a8_failure(s.tables, A8Compare::AtLeast);
  r.equality_form = !parallel::first_a8_failure(s.tables, A8Compare::Equal);
  r.at_most_form = !parallel::first_a8_failure(s.tables, A8Compare::AtMost);
  return r;
}

std::vector<PointSet> all_subsets(std::size_t n) {
  if (n > 12) throw CapExceeded("all-subset family is capped at 12 points");
  std::vector<PointSet> out;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) out.push_back(mask_to_set(m, n));
  return out;
}

void require_intersection_closed(const std::vector<IntervalSet>& family) {
  std::set<IntervalSet> members(family.begin(), family.end());
  for (const auto& a : family)
    for (const auto& b : family)
      if (!members.count(a & b))
        throw ConfigError("family is not closed under intersection: " + a.to_string() + " ∩ " + b.to_string());
}

void require_intersection_closed_finite(const std::vector<PointSet>& family) {
  std::set<PointSet> members(family.begin(), family.end());
  for (const auto& a : family)
    for (const auto& b : family)
      if (!members.count(a & b))
        throw ConfigError("family is not closed under intersection: " + to_string(a) + " ∩ " + to_string(b));
}

// Direct rational evaluation over an explicit interval family.
struct DirectValues {
  std::vector<Rational> single_lhs, single_rhs;
  std::vector<std::vector<Rational>> pair_lhs, pair_rhs;
};

DirectValues direct_values(const IntervalMeasure& mu, const PLMultiMap& phi, const std::vector<IntervalSet>& family) {
  DirectValues v;
  std::vector<IntervalSet> pre;
  for (const auto& a : family) {
    pre.push_back(large_preimage(phi, a));
    v.single_lhs.push_back(mu.measure(pre.back()));
    v.single_rhs.push_back(mu.measure(a));
  }
  const std::size_t m = family.size();
  v.pair_lhs.assign(m, std::vector<Rational>(m));
  v.pair_rhs.assign(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      v.pair_lhs[i][j] = mu.measure(pre[i] & pre[j]);
      v.pair_rhs[i][j] = mu.measure(large_preimage(phi, family[i] & family[j]));
    }
  return v;
}

template <class Pred>
std::optional<A8Failure> first_direct_failure(const DirectValues& v, Pred&& ok) {
  const std::size_t m = v.single_lhs.size();
  for (std::size_t i = 0; i < m; ++i)
    if (!ok(v.single_lhs[i], v.single_rhs[i])) return A8Failure{i, std::nullopt};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      if (!ok(v.pair_lhs[i][j], v.pair_rhs[i][j])) return A8Failure{i, j};
  return std::nullopt;
}

}  // namespace

A8Result verify_A8(const FiniteMeasure& mu, const FiniteRelation& phi) {
  return scan_a8(finite_setup(mu, phi, all_subsets(phi.size())), "all subsets");
}

A8Result verify_A8(const FiniteMeasure& mu, const FiniteRelation& phi, const std::vector<PointSet>& family) {
  require_intersection_closed_finite(family);
  return scan_a8(finite_setup(mu, phi, family), "explicit family");
}

A8Result verify_A8(const IntervalMeasure& mu, const PLMultiMap& phi, const IntervalAlgebra& family) {
  return scan_a8(interval_setup(mu, phi, family), family.describe());
}

A8Result verify_A8(const IntervalMeasure& mu, const PLMultiMap& phi, const std::vector<IntervalSet>& family) {
  require_intersection_closed(family);
  auto v = direct_values(mu, phi, family);
  A8Result r;
  r.family_size = family.size();
  r.family = "explicit family";
  if (auto bad = first_direct_failure(v, [](const Rational& a, const Rational& b) { return a == b; })) {
    r.holds = false;
    r.witness_a = family[bad->first].to_string();
    if (bad->second) r.witness_b = family[*bad->second].to_string();
  }
  return r;
}

A8FormsResult a8_equivalent_form_check(const FiniteMeasure& mu, const FiniteRelation& phi) {
  return scan_forms(finite_setup(mu, phi, all_subsets(phi.size())));
}

A8FormsResult a8_equivalent_form_check(const FiniteMeasure& mu, const FiniteRelation& phi,
                                       const std::vector<PointSet>& family) {
  require_intersection_closed_finite(family);
  return scan_forms(finite_setup(mu, phi, family));
}

A8FormsResult a8_equivalent_form_check(const IntervalMeasure& mu, const PLMultiMap& phi, const IntervalAlgebra& family) {
  return scan_forms(interval_setup(mu, phi, family));
}

A8FormsResult a8_equivalent_form_check(const IntervalMeasure& mu, const PLMultiMap& phi,
                                       const std::vector<IntervalSet>& family) {
  require_intersection_closed(family);
  auto v = direct_values(mu, phi, family);
  A8FormsResult r;
  r.premise = !first_direct_failure(v, [](const Rational& a, const Rational& b) { return a >= b; });
  r.equality_form = !first_direct_failure(v, [](const Rational& a, const Rational& b) { return a == b; });
  r.at_most_form = !first_direct_failure(v, [](const Rational& a, const Rational& b) { return a <= b; });
  return r;
}

}  // namespace mventropy
