#include "mventropy/selections.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "mventropy/cover_entropy.hpp"
#include "mventropy/errors.hpp"

namespace mventropy {

SelectionSet enumerate_selections(const FiniteRelation& phi, std::size_t cap, std::size_t sample_size,
                                  std::uint64_t seed) {
  const std::size_t n = phi.size();
  SelectionSet out;
  std::uint64_t total = 1;
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t k = phi.image(x).size();
    total = total > std::numeric_limits<std::uint64_t>::max() / k ? std::numeric_limits<std::uint64_t>::max() : total * k;
  }
  out.total = total;

  if (total <= cap) {
    std::vector<std::size_t> digit(n, 0);
    while (true) {
      std::vector<int> f(n);
      for (std::size_t x = 0; x < n; ++x) f[x] = phi.image(x)[digit[x]];
      out.maps.push_back(std::move(f));
      // Odometer with the last point varying fastest gives lexicographic order.
      std::size_t x = n;
      while (x > 0) {
        --x;
        if (++digit[x] < phi.image(x).size()) break;
        digit[x] = 0;
        if (x == 0) return out;
      }
      if (n == 0) return out;
    }
  }

  out.sampled = true;
  std::mt19937_64 rng(seed);
  std::set<std::vector<int>> seen;
  while (out.maps.size() < sample_size) {
    std::vector<int> f(n);
    for (std::size_t x = 0; x < n; ++x) {
      const auto& img = phi.image(x);
      f[x] = img[rng() % img.size()];
    }
    if (seen.insert(f).second) out.maps.push_back(std::move(f));
  }
  return out;
}

FiniteRelation selection_relation(const FiniteRelation& phi, const std::vector<int>& f) {
  if (f.size() != phi.size()) throw std::invalid_argument("selection has the wrong length");
  for (std::size_t x = 0; x < f.size(); ++x)
    if (!phi.contains(x, f[x])) throw std::invalid_argument("map is not a selection: f(x) outside phi(x)");
  return FiniteRelation::from_function(phi.space(), f);
}

namespace {

// phi(x) as a single closed interval; throws when it is not one.
std::pair<Rational, Rational> convex_value(const PLMultiMap& phi, const Rational& x) {
  auto v = phi.eval(x);
  if (v.pieces().size() != 1) {
    throw SelectionHypothesisError("value at " + to_string(x) + " is not an interval: " + v.to_string());
  }
  const auto& p = v.pieces().front();
  return {p.lo.value, p.hi.value};
}

}  // namespace

PLFunction pl_selection(const PLMultiMap& phi) {
  auto reg = classify_regularity(phi);
  if (reg != Regularity::Lsc && reg != Regularity::Continuous) {
    throw SelectionHypothesisError("map is " + to_string(reg) + ", not lower semicontinuous");
  }

  std::vector<Rational> xs = phi.critical_points();
  std::vector<const PLFunction*> envelopes;
  for (const auto& b : phi.branches()) {
    envelopes.push_back(&b.lower);
    envelopes.push_back(&b.upper);
  }
  for (std::size_t i = 0; i < envelopes.size(); ++i)
    for (std::size_t j = i + 1; j < envelopes.size(); ++j)
      for (const auto& c : envelopes[i]->crossings(*envelopes[j])) xs.push_back(c);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<PLFunction::Knot> knots;
  for (const auto& x : xs) {
    auto [lo, hi] = convex_value(phi, x);
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    knots.emplace_back(x, mid);
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) convex_value(phi, (xs[i] + xs[i + 1]) / 2);

  PLFunction f(std::move(knots));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Rational> probes{xs[i]};
    if (i + 1 < xs.size()) probes.push_back((xs[i] + xs[i + 1]) / 2);
    for (const auto& x : probes) {
      if (!phi.eval(x).contains(f(x))) {
        throw std::logic_error("constructed selection leaves the map at " + to_string(x));
      }
    }
  }
  return f;
}

PLMultiMap single_valued_map(const PLFunction& f) {
  return PLMultiMap({PLBranch::single(IntervalSet::unit(), f)});
}

OrbitEntropyReport selection_entropy(const FiniteRelation& f, const std::vector<Rational>& eps_ladder, int depth,
                                     const OrbitEntropyOptions& opts) {
  if (!f.is_single_valued()) throw std::invalid_argument("selection entropy needs a single-valued map");
  return h_KT_estimate(f, eps_ladder, depth, opts);
}

bool SandwichReport::consistent() const { return count("violated") == 0; }

std::size_t SandwichReport::count(const std::string& verdict) const {
  std::size_t c = 0;
  for (const auto& r : records) c += r.verdict == verdict;
  return c;
}

namespace {

constexpr double kLevelSlack = 1e-12;

void add_exact(SandwichReport& rep, std::string name, const CountResult& lhs, const CountResult& rhs, std::string level) {
  SandwichRecord r{std::move(name), static_cast<double>(lhs.value), static_cast<double>(rhs.value), std::move(level), "",
                   true};
  if (!lhs.exact || !rhs.exact) {
    r.verdict = "indeterminate";
  } else {
    r.verdict = lhs.value <= rhs.value ? "holds" : "violated";
  }
  rep.records.push_back(std::move(r));
}

void add_diagnostic(SandwichReport& rep, std::string name, double lhs, double rhs, std::string level) {
  std::string verdict = lhs <= rhs + kLevelSlack ? "holds" : "indeterminate";
  rep.records.push_back({std::move(name), lhs, rhs, std::move(level), std::move(verdict), false});
}

std::string eps_level(const Rational& eps, int n) { return "eps=" + to_string(eps) + " n=" + std::to_string(n); }

struct MapLevels {
  OrbitEntropyReport kt;
  OrbitEntropyReport cm;
  std::vector<CoverEntropyTable> covers;                // per eps
  std::vector<std::vector<MetricEntropyTable>> metric;  // [measure][partition]
};

MapLevels compute_levels(const FiniteRelation& phi, const SandwichInput& in) {
  MapLevels m;
  m.kt = h_KT_estimate(phi, in.eps_ladder, in.depth, in.orbit_options);
  m.cm = h_CM_estimate(phi, in.eps_ladder, in.depth, in.orbit_options);
  for (const auto& eps : in.eps_ladder) {
    m.covers.push_back(h_plus_estimate(phi, ball_cover(phi.space(), eps), in.depth, {1u << 20, 20'000'000}));
  }
  for (const auto& mu : in.measures) {
    std::vector<MetricEntropyTable> row;
    for (const auto& p : in.partitions) row.push_back(metric_entropy_estimate(mu, phi, p, in.depth));
    m.metric.push_back(std::move(row));
  }
  return m;
}

double cover_level(const MapLevels& m, std::size_t e, int n) { return m.covers[e].estimate.values[n - 1]; }

}  // namespace

SandwichReport sandwich_report(const FiniteRelation& phi, const SandwichInput& in) {
  if (in.depth < 1) throw std::invalid_argument("sandwich depth must be >= 1");
  SandwichReport rep;
  const MapLevels base = compute_levels(phi, in);

  for (std::size_t e = 0; e < in.eps_ladder.size(); ++e) {
    for (int n = 1; n <= in.depth; ++n) {
      const auto& kt = base.kt.level(e, n);
      const auto& cm = base.cm.level(e, n);
      const std::string level = eps_level(in.eps_ladder[e], n);
      add_exact(rep, "KT spanning count <= KT separated count", kt.span, kt.sep, level);
      add_exact(rep, "CM spanning count <= CM separated count", cm.span, cm.sep, level);
      add_diagnostic(rep, "cover entropy <= KT separated entropy", cover_level(base, e, n),
                     std::log(static_cast<double>(kt.sep.value)) / n, level);
    }
  }
  for (std::size_t mi = 0; mi < in.measures.size(); ++mi) {
    for (std::size_t pi = 0; pi < in.partitions.size(); ++pi) {
      for (int n = 1; n <= in.depth; ++n) {
        double best_cover = 0;
        for (std::size_t e = 0; e < in.eps_ladder.size(); ++e) best_cover = std::max(best_cover, cover_level(base, e, n));
        add_diagnostic(rep, "metric entropy <= cover entropy", base.metric[mi][pi].estimate.values[n - 1], best_cover,
                       "measure=" + std::to_string(mi) + " partition=" + std::to_string(pi) + " n=" + std::to_string(n));
      }
    }
  }

  auto sel = enumerate_selections(phi);
  rep.selections_complete = !sel.sampled && sel.maps.size() <= in.selection_limit;
  rep.selections_used = std::min(sel.maps.size(), in.selection_limit);
  for (std::size_t s = 0; s < rep.selections_used; ++s) {
    const auto frel = selection_relation(phi, sel.maps[s]);
    const MapLevels f = compute_levels(frel, in);
    const std::string tag = " selection=" + std::to_string(s);
    for (std::size_t e = 0; e < in.eps_ladder.size(); ++e) {
      for (int n = 1; n <= in.depth; ++n) {
        const std::string level = eps_level(in.eps_ladder[e], n) + tag;
        add_exact(rep, "selection KT separated count <= relation KT separated count", f.kt.level(e, n).sep,
                  base.kt.level(e, n).sep, level);
        add_exact(rep, "relation CM separated count <= selection CM separated count", base.cm.level(e, n).sep,
                  f.cm.level(e, n).sep, level);
        add_exact(rep, "relation CM spanning count <= selection CM spanning count", base.cm.level(e, n).span,
                  f.cm.level(e, n).span, level);
        add_diagnostic(rep, "relation cover entropy <= selection cover entropy", cover_level(base, e, n),
                       cover_level(f, e, n), level);
      }
    }
    for (std::size_t mi = 0; mi < in.measures.size(); ++mi) {
      for (std::size_t pi = 0; pi < in.partitions.size(); ++pi) {
        for (int n = 1; n <= in.depth; ++n) {
          const std::string level =
              "measure=" + std::to_string(mi) + " partition=" + std::to_string(pi) + " n=" + std::to_string(n) + tag;
          const double hf = f.metric[mi][pi].estimate.values[n - 1];
          const double hphi = base.metric[mi][pi].estimate.values[n - 1];
          add_diagnostic(rep, "selection metric entropy <= relation metric entropy", hf, hphi, level);
          add_diagnostic(rep, "relation metric entropy <= selection metric entropy", hphi, hf, level);
        }
      }
    }
  }
  return rep;
}

}  // namespace mventropy
