#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "helpers.hpp"

using namespace testing_support;

namespace {

PLFunction id_fn() { return PLFunction::affine(q(1), q(0)); }
PLFunction cst(long p, long d = 1) { return PLFunction::constant(q(p, d)); }

struct Named {
  std::string name;
  PLMultiMap map;
};

// Hand-built maps with jumps of size >= 1/4 at rational points.
std::vector<Named> library() {
  std::vector<Named> out;
  out.push_back({"tent", tent()});
  out.push_back({"usc identity", usc_identity()});
  out.push_back({"point then full", PLMultiMap({PLBranch::single(iv("[0,1/2)"), id_fn()),
                                                PLBranch::band(iv("[1/2,1]"), cst(0), cst(1))})});
  out.push_back({"full then point", PLMultiMap({PLBranch::band(iv("[0,1/2)"), cst(0), cst(1)),
                                                PLBranch::single(iv("[1/2,1]"), id_fn())})});
  out.push_back({"constant full", PLMultiMap({PLBranch::band(IntervalSet::unit(), cst(0), cst(1))})});
  out.push_back({"sliding band", PLMultiMap({PLBranch::band(IntervalSet::unit(), PLFunction::affine(q(1, 2), q(0)),
                                                            PLFunction::affine(q(1, 2), q(1, 2)))})});
  out.push_back({"jump keeps left", PLMultiMap({PLBranch::single(iv("[0,1/2]"), cst(1, 4)),
                                                PLBranch::single(iv("(1/2,1]"), cst(3, 4))})});
  out.push_back({"jump keeps both", PLMultiMap({PLBranch::single(iv("[0,1/2]"), cst(1, 4)),
                                                PLBranch::single(iv("[1/2,1]"), cst(3, 4))})});
  out.push_back({"point blow-up", PLMultiMap({PLBranch::single(IntervalSet::unit(), id_fn()),
                                              PLBranch::band(iv("{1/2}"), cst(0), cst(1))})});
  out.push_back({"point collapse", PLMultiMap({PLBranch::band(iv("[0,1/2) u (1/2,1]"), cst(0), cst(1)),
                                               PLBranch::single(iv("{1/2}"), cst(1, 2))})});
  out.push_back({"two crossing bands",
                 PLMultiMap({PLBranch::band(IntervalSet::unit(), cst(0), id_fn()),
                             PLBranch::band(IntervalSet::unit(), PLFunction::affine(q(-1), q(1)), cst(1))})});
  out.push_back({"band widens right", PLMultiMap({PLBranch::band(iv("[0,1/2]"), cst(0), cst(1, 4)),
                                                  PLBranch::band(iv("(1/2,1]"), cst(0), cst(1))})});
  out.push_back({"moved endpoint", PLMultiMap({PLBranch::single(iv("{0}"), cst(1)),
                                               PLBranch::single(iv("(0,1]"), id_fn())})});
  out.push_back({"extra value at 0", PLMultiMap({PLBranch::single(IntervalSet::unit(), id_fn()),
                                                 PLBranch::single(iv("{0}"), cst(1))})});
  out.push_back({"reflection", PLMultiMap({PLBranch::single(IntervalSet::unit(), PLFunction::affine(q(-1), q(1)))})});
  out.push_back({"halves meeting", PLMultiMap({PLBranch::band(iv("[0,1/2]"), cst(0), cst(1, 2)),
                                               PLBranch::band(iv("[1/2,1]"), cst(1, 2), cst(1))})});
  out.push_back({"slope-one tent", full_tent()});
  out.push_back({"open gap", PLMultiMap({PLBranch::single(iv("[0,1/3)"), cst(0)),
                                         PLBranch::band(iv("[1/3,2/3]"), cst(0), cst(1)),
                                         PLBranch::single(iv("(2/3,1]"), cst(1))})});
  out.push_back({"closed gap", PLMultiMap({PLBranch::band(iv("[0,1/3]"), cst(0), cst(1)),
                                           PLBranch::single(iv("(1/3,2/3)"), cst(1, 2)),
                                           PLBranch::band(iv("[2/3,1]"), cst(0), cst(1))})});
  out.push_back({"zigzag", PLMultiMap({PLBranch::single(
                               IntervalSet::unit(),
                               PLFunction({{q(0), q(0)}, {q(1, 4), q(1)}, {q(3, 4), q(0)}, {q(1), q(1, 2)}}))})});
  return out;
}

IntervalSet open_hull(const IntervalSet& s, const Rational& eta) {
  IntervalSet out;
  for (const auto& p : s.pieces()) {
    Rational lo = p.lo.value - eta, hi = p.hi.value + eta;
    out = out | IntervalSet::make(std::max(lo, q(0)), lo < 0, std::min(hi, q(1)), hi > 1);
  }
  return out;
}

// Neighbourhood test from the definition, at x0 and its one-sided
// neighbours: u.s.c. when every nearby value lies in the eta-hull of
// phi(x0); l.s.c. when every point of phi(x0) is approached by nearby values.
std::pair<bool, bool> oracle(const PLMultiMap& map) {
  const Rational eta = q(1, 1000), h = q(1, 1'000'000);
  bool usc = true, lsc = true;
  for (const auto& x0 : samples(96, map.critical_points())) {
    const IntervalSet v0 = map.eval(x0);
    const IntervalSet hull = open_hull(v0, eta);
    std::vector<Rational> probes;
    for (const auto& p : v0.pieces()) {
      probes.push_back(p.lo.value);
      probes.push_back(p.hi.value);
      probes.push_back((p.lo.value + p.hi.value) / 2);
    }
    for (const Rational& x : std::vector<Rational>{x0 - h, x0 + h}) {
      if (x < 0 || x > 1) continue;
      const IntervalSet v = map.eval(x);
      if (!v.is_subset_of(hull)) usc = false;
      for (const auto& y : probes)
        if (!v.intersects(open_hull(IntervalSet::point(y), eta))) lsc = false;
    }
  }
  return {usc, lsc};
}

}  // namespace

TEST_CASE("eval on the library maps") {
  CHECK(tent().eval(q(1, 2)) == IntervalSet::point(q(3, 4)));
  CHECK(usc_identity().eval(q(0)) == iv("{0} u {1}"));
  CHECK(usc_identity().eval(q(1, 3)) == IntervalSet::point(q(1, 3)));
  CHECK_THROWS_AS(tent().eval(q(3, 2)), std::domain_error);
}

TEST_CASE("map validation") {
  // Domains must cover [0,1].
  CHECK_THROWS_AS(PLMultiMap({PLBranch::single(iv("[0,1/2]"), cst(0))}), std::invalid_argument);
  // Values must stay in [0,1].
  CHECK_THROWS_AS(PLMultiMap({PLBranch::single(IntervalSet::unit(), PLFunction::affine(q(2), q(0)))}),
                  std::invalid_argument);
  // lower <= upper.
  CHECK_THROWS_AS(PLMultiMap({PLBranch::band(IntervalSet::unit(), cst(1), cst(0))}), std::invalid_argument);
}

TEST_CASE("regularity agrees with the neighbourhood oracle") {
  for (const auto& [name, map] : library()) {
    CAPTURE(name);
    auto [usc, lsc] = oracle(map);
    Regularity expected = usc && lsc ? Regularity::Continuous
                          : usc      ? Regularity::Usc
                          : lsc      ? Regularity::Lsc
                                     : Regularity::Neither;
    CHECK(to_string(classify_regularity(map)) == to_string(expected));
  }
  CHECK(classify_regularity(tent()) == Regularity::Continuous);
  CHECK(classify_regularity(usc_identity()) == Regularity::Usc);
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(FiniteMetricSpace({{q(0), q(1), q(3)}, {q(1), q(0), q(1)}, {q(3), q(1), q(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({{q(0), q(0)}, {q(0), q(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({{q(0), q(1)}, {q(2), q(0)}}), std::invalid_argument);
  auto s = FiniteMetricSpace::on_line({q(0), q(1, 4), q(1)});
  CHECK(s.distance(0, 2) == 1);
  CHECK(s.distance(2, 1) == q(3, 4));
  CHECK(s.rank_at_most(q(1, 4)) == 1);
  CHECK(s.rank_at_most(q(-1)) == -1);
  CHECK_THROWS_AS(FiniteRelation(s, {{0}, {}, {1}}), std::invalid_argument);
}

TEST_CASE("composition") {
  auto space = FiniteMetricSpace::discrete(3);
  FiniteRelation cycle(space, {{1}, {2}, {0}});
  FiniteRelation phi(space, {{0, 2}, {1}, {0, 1}});
  CHECK(compose(FiniteRelation::identity(space), phi) == phi);
  CHECK(compose(phi, FiniteRelation::identity(space)) == phi);
  CHECK(compose(FiniteRelation::full(space), phi) == FiniteRelation::full(space));
  CHECK(compose(cycle, cycle) == FiniteRelation(space, {{2}, {0}, {1}}));
  CHECK(cycle.power(3) == FiniteRelation::identity(space));
  CHECK(phi.power(0) == FiniteRelation::identity(space));
  CHECK_THROWS_AS(compose(phi, FiniteRelation::identity(FiniteMetricSpace::discrete(2))), std::invalid_argument);

  // Against orbits: y in phi^k(x) iff some k+1 orbit runs from x to y.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng() % 6;
    FiniteRelation r(FiniteMetricSpace::discrete(n), random_values(rng, n, 2));
    for (int k = 1; k <= 3; ++k) {
      auto p = r.power(k);
      std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
      for (const auto& o : brute_orbits(r, k + 1)) reach[o.front()][o.back()] = true;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) REQUIRE(p.contains(x, y) == reach[x][y]);
    }
    FiniteRelation a(r.space(), random_values(rng, n, 2)), b(r.space(), random_values(rng, n, 3));
    CHECK(compose(compose(a, b), r) == compose(a, compose(b, r)));
  }
}

TEST_CASE("discretization") {
  auto id = discretize(PLMultiMap({PLBranch::single(IntervalSet::unit(), id_fn())}), 4);
  for (int i = 0; i <= 4; ++i) {
    CHECK(id.contains(i, i));
    for (int j = 0; j <= 4; ++j) CHECK(id.contains(i, j) == (std::abs(i - j) <= 1));
  }
  CHECK(discretize(tent(), 4).contains(2, 3));
  auto full = discretize(PLMultiMap({PLBranch::band(IntervalSet::unit(), cst(0), cst(1))}), 5);
  CHECK(full == FiniteRelation::full(full.space()));

  // Exact tent orbits, rounded to the grid, are orbits of the grid relation.
  for (int m : {4, 8, 16}) {
    auto rel = discretize(tent(), m);
    const auto pts = grid_points(m);
    for (int i = 0; i <= m; ++i) {
      Rational x = pts[i];
      int g = i;
      for (int step = 0; step < 6; ++step) {
        Rational next = tent().eval(x).pieces().front().lo.value;
        int best = 0;
        for (int j = 0; j <= m; ++j)
          if (abs(pts[j] - next) < abs(pts[best] - next)) best = j;
        REQUIRE(rel.contains(g, best));
        x = next;
        g = best;
      }
    }
  }
}

TEST_CASE("hyperspace lift") {
  auto space = FiniteMetricSpace::on_line({q(0), q(1, 3), q(1)});
  FiniteRelation phi(space, {{1, 2}, {0}, {2}});
  auto h = hyperspace_lift(phi);
  CHECK(h.lift.size() == 7);
  CHECK(h.lift.is_single_valued());
  for (std::size_t x = 0; x < 3; ++x) {
    auto state = Hyperspace::state_of_mask(1u << x);
    auto img = h.lift.image(state).front();
    PointSet expect = phi.image_set(x);
    CHECK(PointSet(3, Hyperspace::mask_of_state(img)) == expect);
    for (std::size_t y = 0; y < 3; ++y)
      CHECK(h.lift.space().distance(state, Hyperspace::state_of_mask(1u << y)) == space.distance(x, y));
  }
  // Hausdorff distance from the definition.
  for (std::uint32_t a = 1; a < 8; ++a)
    for (std::uint32_t b = 1; b < 8; ++b) {
      Rational d = 0;
      for (int i = 0; i < 3; ++i)
        for (int dir = 0; dir < 2; ++dir) {
          std::uint32_t from = dir ? b : a, to = dir ? a : b;
          if (!(from >> i & 1)) continue;
          Rational best = 10;
          for (int j = 0; j < 3; ++j)
            if (to >> j & 1) best = std::min(best, space.distance(i, j));
          d = std::max(d, best);
        }
      CHECK(h.lift.space().distance(Hyperspace::state_of_mask(a), Hyperspace::state_of_mask(b)) == d);
    }
  auto full = hyperspace_lift(FiniteRelation::full(space));
  for (std::size_t s = 0; s < 7; ++s) CHECK(full.lift.image(s).front() == 6);
  CHECK_THROWS_AS(hyperspace_lift(FiniteRelation::identity(FiniteMetricSpace::discrete(13))), std::exception);
}
