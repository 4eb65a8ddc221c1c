#include "mventropy/orbits.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "mventropy/errors.hpp"
#include "mventropy/max_clique.hpp"
#include "mventropy/set_cover.hpp"

namespace mventropy {

OrbitSet enumerate_orbits(const FiniteRelation& phi, int n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  const std::size_t sz = phi.size();

  // Count first so an oversized request fails before allocating.
  std::vector<double> count(sz, 1.0), next(sz);
  for (int k = 1; k < n; ++k) {
    for (std::size_t x = 0; x < sz; ++x) {
      double c = 0;
      for (int y : phi.image(x)) c += count[y];
      next[x] = c;
    }
    count.swap(next);
  }
  double total = 0;
  for (double c : count) total += c;
  if (total > static_cast<double>(cap)) {
    throw CapExceeded("|Orb_" + std::to_string(n) + "| = " + std::to_string(static_cast<long double>(total)) +
                      " exceeds the orbit cap " + std::to_string(cap));
  }

  OrbitSet out;
  out.block.length = static_cast<std::size_t>(n);
  out.block.points.reserve(static_cast<std::size_t>(total) * n);
  std::vector<int> path(n);
  std::vector<std::size_t> choice(n, 0);
  for (std::size_t start = 0; start < sz; ++start) {
    path[0] = static_cast<int>(start);
    int depth = 0;
    choice[0] = 0;
    // Depth-first with successors in increasing order gives lexicographic output.
    while (depth >= 0) {
      if (depth == n - 1) {
        out.block.points.insert(out.block.points.end(), path.begin(), path.end());
        --depth;
        continue;
      }
      const auto& succ = phi.image(path[depth]);
      if (choice[depth] == succ.size()) {
        --depth;
        continue;
      }
      path[depth + 1] = succ[choice[depth]++];
      ++depth;
      choice[depth] = 0;
    }
  }
  return out;
}

Rational dn_distance(const FiniteMetricSpace& space, const std::vector<int>& u, const std::vector<int>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("d_n: orbits of different length");
  Rank worst = 0;
  for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, space.rank(u[i], v[i]));
  return space.levels()[worst];
}

namespace {

CountResult from_clique(const CliqueResult& c) {
  return {c.size(), c.upper_bound, c.exact, c.vertices};
}

CountResult from_cover(const SetCoverResult& c) {
  return {c.size, c.lower_bound, c.exact, c.chosen};
}

CountResult separated(const std::vector<PointSet>& close, const OrbitEntropyOptions& opts) {
  return from_clique(max_clique(complement_graph(close), {opts.exact_threshold, opts.node_limit}));
}

CountResult spanning(const std::vector<PointSet>& close, const OrbitEntropyOptions& opts) {
  return from_cover(min_set_cover(close.size(), close, {opts.exact_threshold, opts.node_limit}));
}

std::vector<PointSet> cm_close(const std::vector<Rank>& ranks, std::size_t sz, int max_rank) {
  std::vector<PointSet> rows(sz, PointSet(sz));
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b)
      if (static_cast<int>(ranks[a * sz + b]) <= max_rank) rows[a].set(b);
  return rows;
}

void check_eps(const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
}

}  // namespace

CountResult s_KT(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts) {
  check_eps(eps);
  auto orbits = enumerate_orbits(phi, n, opts.orbit_cap);
  return separated(parallel::close_matrix(phi.space(), orbits.block, phi.space().rank_at_most(eps)), opts);
}

CountResult r_KT(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts) {
  check_eps(eps);
  auto orbits = enumerate_orbits(phi, n, opts.orbit_cap);
  return spanning(parallel::close_matrix(phi.space(), orbits.block, phi.space().rank_at_most(eps)), opts);
}

Rational dCM_distance(const FiniteRelation& phi, std::size_t x, std::size_t y, int n) {
  auto ranks = parallel::cm_ranks(phi, n);
  return phi.space().levels()[ranks[x * phi.size() + y]];
}

CountResult s_CM(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts) {
  check_eps(eps);
  return separated(cm_close(parallel::cm_ranks(phi, n), phi.size(), phi.space().rank_at_most(eps)), opts);
}

CountResult r_CM(const FiniteRelation& phi, const Rational& eps, int n, const OrbitEntropyOptions& opts) {
  check_eps(eps);
  return spanning(cm_close(parallel::cm_ranks(phi, n), phi.size(), phi.space().rank_at_most(eps)), opts);
}

const OrbitLevel& OrbitEntropyReport::level(std::size_t eps_index, int n) const {
  const std::size_t depth = sep.empty() ? 0 : sep.front().depth();
  return levels.at(eps_index * depth + static_cast<std::size_t>(n - 1));
}

double OrbitEntropyReport::sep_sup() const {
  double best = 0;
  for (const auto& e : sep) best = std::max(best, e.reported);
  return best;
}

double OrbitEntropyReport::span_sup() const {
  double best = 0;
  for (const auto& e : span) best = std::max(best, e.reported);
  return best;
}

void OrbitEntropyReport::write_csv(std::ostream& os) const {
  os << "eps,n,s,r,log_s_over_n,log_r_over_n,exact\n";
  os << std::setprecision(17);
  for (const auto& l : levels) {
    os << to_string(l.eps) << ',' << l.n << ',' << l.sep.value << ',' << l.span.value << ','
       << std::log(static_cast<double>(l.sep.value)) / l.n << ',' << std::log(static_cast<double>(l.span.value)) / l.n
       << ',' << ((l.sep.exact && l.span.exact) ? "true" : "false") << '\n';
  }
}

namespace {

template <class LevelFn>
OrbitEntropyReport build_report(std::string family, const std::vector<Rational>& ladder, int depth, LevelFn&& fn) {
  if (depth < 1) throw std::invalid_argument("entropy depth must be >= 1");
  for (const auto& e : ladder) check_eps(e);
  OrbitEntropyReport rep;
  rep.family = std::move(family);
  rep.eps_ladder = ladder;
  // levels are produced n-major by fn; regroup eps-major.
  std::vector<std::vector<OrbitLevel>> by_eps(ladder.size());
  for (int n = 1; n <= depth; ++n) {
    auto row = fn(n);
    for (std::size_t e = 0; e < ladder.size(); ++e) by_eps[e].push_back(std::move(row[e]));
  }
  for (std::size_t e = 0; e < ladder.size(); ++e) {
    std::vector<double> sep_tot, span_tot;
    bool sep_exact = true, span_exact = true;
    for (auto& l : by_eps[e]) {
      sep_tot.push_back(std::log(static_cast<double>(l.sep.value)));
      span_tot.push_back(std::log(static_cast<double>(l.span.value)));
      sep_exact = sep_exact && l.sep.exact;
      span_exact = span_exact && l.span.exact;
      // Only meaningful when both numbers are exact.
      if (l.sep.exact && l.span.exact && l.span.value > l.sep.value) rep.span_le_sep = false;
      rep.levels.push_back(std::move(l));
    }
    auto sep = EntropyEstimate::from_totals(sep_tot, sep_exact);
    auto span = EntropyEstimate::from_totals(span_tot, span_exact);
    for (auto* est : {&sep, &span}) {
      est->params = {{"family", rep.family}, {"eps", to_string(ladder[e])}, {"depth", std::to_string(depth)}};
    }
    rep.sep.push_back(std::move(sep));
    rep.span.push_back(std::move(span));
  }
  return rep;
}

OrbitEntropyReport kt_report(std::string family, const FiniteRelation& phi, const std::vector<Rational>& ladder,
                             int depth, const OrbitEntropyOptions& opts) {
  return build_report(std::move(family), ladder, depth, [&](int n) {
    auto orbits = enumerate_orbits(phi, n, opts.orbit_cap);
    std::vector<OrbitLevel> row;
    for (const auto& eps : ladder) {
      auto close = parallel::close_matrix(phi.space(), orbits.block, phi.space().rank_at_most(eps));
      row.push_back({eps, n, orbits.size(), separated(close, opts), spanning(close, opts)});
    }
    return row;
  });
}

}  // namespace

OrbitEntropyReport h_KT_estimate(const FiniteRelation& phi, const std::vector<Rational>& ladder, int depth,
                                 const OrbitEntropyOptions& opts) {
  return kt_report("KT", phi, ladder, depth, opts);
}

OrbitEntropyReport h_CM_estimate(const FiniteRelation& phi, const std::vector<Rational>& ladder, int depth,
                                 const OrbitEntropyOptions& opts) {
  return build_report("CM", ladder, depth, [&](int n) {
    auto ranks = parallel::cm_ranks(phi, n);
    std::vector<OrbitLevel> row;
    for (const auto& eps : ladder) {
      auto close = cm_close(ranks, phi.size(), phi.space().rank_at_most(eps));
      row.push_back({eps, n, phi.size(), separated(close, opts), spanning(close, opts)});
    }
    return row;
  });
}

OrbitEntropyReport hyperspace_entropy(const FiniteRelation& phi, const std::vector<Rational>& ladder, int depth,
                                      const OrbitEntropyOptions& opts, std::size_t cap) {
  auto hyper = hyperspace_lift(phi, cap);
  return kt_report("hyperspace", hyper.lift, ladder, depth, opts);
}

std::vector<Rational> halving_ladder(const Rational& top, int steps) {
  std::vector<Rational> out;
  Rational e = top;
  for (int i = 0; i < steps; ++i) {
    e /= 2;
    out.push_back(e);
  }
  return out;
}

}  // namespace mventropy
