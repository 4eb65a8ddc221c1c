#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <random>
#include <vector>

#include "mventropy/finite_carrier.hpp"
#include "mventropy/interval_set.hpp"
#include "mventropy/pl_map.hpp"

// Shared instances and brute-force oracles. The oracles avoid the library's
// own algorithms: they work from definitions on explicit enumerations.

namespace testing_support {

using namespace mventropy;

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline IntervalSet iv(const char* text) { return IntervalSet::parse(text); }

// The counterexample tent map: x + 1/4 on [0,1/2], 5/4 - x on [1/2,1].
inline PLMultiMap tent() {
  return PLMultiMap({PLBranch::single(IntervalSet::unit(), PLFunction({{q(0), q(1, 4)}, {q(1, 2), q(3, 4)}, {q(1), q(1, 4)}}))});
}

// Identity on [0,1] plus the values {0} and {1} at both endpoints.
inline PLMultiMap usc_identity() {
  return PLMultiMap({PLBranch::single(IntervalSet::unit(), PLFunction::affine(q(1), q(0))),
                     PLBranch::single(iv("{0,1}"), PLFunction::constant(q(0))),
                     PLBranch::single(iv("{0,1}"), PLFunction::constant(q(1)))});
}

// Slope-one tent: 2x on [0,1/2], 2 - 2x on [1/2,1].
inline PLMultiMap full_tent() {
  return PLMultiMap({PLBranch::single(IntervalSet::unit(), PLFunction({{q(0), q(0)}, {q(1, 2), q(1)}, {q(1), q(0)}}))});
}

// Rational sample points of [0,1]: k/den for k = 0..den, plus the given
// points and their neighbours at distance 1/(den*den).
inline std::vector<Rational> samples(long den, const std::vector<Rational>& extra = {}) {
  std::vector<Rational> out;
  for (long k = 0; k <= den; ++k) out.push_back(q(k, den));
  const Rational tiny = q(1, den * den * 7);
  for (const auto& e : extra) {
    for (const Rational& x : std::vector<Rational>{e - tiny, e, e + tiny}) {
      if (x >= 0 && x <= 1) out.push_back(x);
    }
  }
  return out;
}

inline std::vector<Rational> endpoints_of(const std::vector<IntervalSet>& sets) {
  std::vector<Rational> out;
  for (const auto& s : sets)
    for (const auto& e : s.endpoints()) out.push_back(e);
  return out;
}

inline FiniteRelation relation_on_line(std::vector<Rational> coords, std::vector<std::vector<int>> values) {
  return FiniteRelation(FiniteMetricSpace::on_line(coords), std::move(values));
}

inline FiniteRelation full_two_point() { return relation_on_line({q(0), q(1)}, {{0, 1}, {0, 1}}); }

// Every orbit of length n, built by explicit nested extension.
inline std::vector<std::vector<int>> brute_orbits(const FiniteRelation& phi, int n) {
  std::vector<std::vector<int>> cur;
  for (std::size_t x = 0; x < phi.size(); ++x) cur.push_back({static_cast<int>(x)});
  for (int step = 1; step < n; ++step) {
    std::vector<std::vector<int>> next;
    for (const auto& o : cur)
      for (std::size_t y = 0; y < phi.size(); ++y)
        if (phi.contains(o.back(), y)) {
          auto e = o;
          e.push_back(static_cast<int>(y));
          next.push_back(e);
        }
    cur = std::move(next);
  }
  return cur;
}

inline Rational brute_dn(const FiniteMetricSpace& s, const std::vector<int>& u, const std::vector<int>& v) {
  Rational m = 0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, s.distance(u[i], v[i]));
  return m;
}

// Largest subset with all pairwise "far" (by subset enumeration, k <= 20).
inline std::size_t brute_max_separated(std::size_t k, const std::function<bool(std::size_t, std::size_t)>& far) {
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::size_t c = std::popcount(mask);
    if (c <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i)
      for (std::size_t j = i + 1; j < k && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !far(i, j)) ok = false;
    if (ok) best = c;
  }
  return best;
}

// Smallest subset within "near" of everything.
inline std::size_t brute_min_spanning(std::size_t k, const std::function<bool(std::size_t, std::size_t)>& near) {
  std::size_t best = k;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::size_t c = std::popcount(mask);
    if (c >= best) continue;
    bool ok = true;
    for (std::size_t v = 0; v < k && ok; ++v) {
      bool hit = false;
      for (std::size_t r = 0; r < k && !hit; ++r) hit = (mask >> r & 1) && near(r, v);
      ok = hit;
    }
    if (ok) best = c;
  }
  return best;
}

inline std::vector<std::vector<int>> random_values(std::mt19937_64& rng, std::size_t n, std::size_t max_deg) {
  std::vector<std::vector<int>> v(n);
  for (auto& img : v) {
    while (img.empty()) {
      for (std::size_t y = 0; y < n; ++y)
        if (rng() % n < max_deg) img.push_back(static_cast<int>(y));
    }
  }
  return v;
}

inline std::vector<Rational> random_coords(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> ks(17);
  for (int i = 0; i < 17; ++i) ks[i] = i;
  std::shuffle(ks.begin(), ks.end(), rng);
  ks.resize(n);
  std::sort(ks.begin(), ks.end());
  std::vector<Rational> out;
  for (int k : ks) out.push_back(q(k, 16));
  return out;
}

using Knots = std::vector<std::pair<Rational, Rational>>;

inline Rational interp(const Knots& k, const Rational& x) {
  for (std::size_t i = 0; i + 1 < k.size(); ++i)
    if (x >= k[i].first && x <= k[i + 1].first)
      return k[i].second + (k[i + 1].second - k[i].second) * (x - k[i].first) / (k[i + 1].first - k[i].first);
  throw std::logic_error("outside knots");
}

// A convex-valued band with its envelopes kept on the side for the oracle,
// optionally shrunk to a sub-interval at one point (still l.s.c.).
struct Band {
  Knots lower, upper;
  std::optional<Rational> pinch_at;
  Rational pinch_lo, pinch_hi;

  PLMultiMap map() const {
    if (!pinch_at) return PLMultiMap({PLBranch::band(IntervalSet::unit(), PLFunction(lower), PLFunction(upper))});
    auto away = IntervalSet::unit() - IntervalSet::point(*pinch_at);
    return PLMultiMap({PLBranch::band(away, PLFunction(lower), PLFunction(upper)),
                       PLBranch::band(IntervalSet::point(*pinch_at), PLFunction::constant(pinch_lo),
                                      PLFunction::constant(pinch_hi))});
  }
  bool holds(const Rational& x, const Rational& y) const {
    if (pinch_at && x == *pinch_at) return y >= pinch_lo && y <= pinch_hi;
    return y >= interp(lower, x) && y <= interp(upper, x);
  }
};

inline Band random_band(std::mt19937_64& rng, bool pinch) {
  std::set<long> cuts{0, 16};
  const int extra = static_cast<int>(rng() % 4);
  for (int i = 0; i < extra; ++i) cuts.insert(1 + static_cast<long>(rng() % 15));
  Band b;
  for (long c : cuts) {
    Rational lo = q(static_cast<long>(rng() % 9), 16);
    Rational gap = q(static_cast<long>(rng() % 9), 16);
    b.lower.emplace_back(q(c, 16), lo);
    b.upper.emplace_back(q(c, 16), lo + gap);
  }
  if (pinch) {
    Rational at = q(1 + static_cast<long>(rng() % 15), 16);
    Rational lo = interp(b.lower, at), hi = interp(b.upper, at);
    b.pinch_at = at;
    b.pinch_lo = lo + (hi - lo) / 3;
    b.pinch_hi = hi - (hi - lo) / 3;
    b.pinch_lo.canonicalize();
    b.pinch_hi.canonicalize();
  }
  return b;
}


}  // namespace testing_support
