#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mventropy/preimage.hpp"

using namespace testing_support;

namespace {

PLMultiMap band_full() {
  return PLMultiMap({PLBranch::band(IntervalSet::unit(), PLFunction::constant(q(0)), PLFunction::constant(q(1)))});
}

PLMultiMap sliding_band() {
  return PLMultiMap({PLBranch::band(IntervalSet::unit(), PLFunction::affine(q(1, 2), q(0)),
                                    PLFunction::affine(q(1, 2), q(1, 2)))});
}

std::vector<PLMultiMap> maps() { return {tent(), usc_identity(), full_tent(), band_full(), sliding_band()}; }

IntervalSet random_set(std::mt19937_64& rng) {
  std::vector<Interval> raw;
  for (int i = 0, k = 1 + static_cast<int>(rng() % 3); i < k; ++i) {
    long a = static_cast<long>(rng() % 9), b = static_cast<long>(rng() % 9);
    if (a > b) std::swap(a, b);
    raw.push_back({{q(a, 8), a == b || rng() % 2 == 0}, {q(b, 8), a == b || rng() % 2 == 0}});
  }
  return IntervalSet::normalize(raw);
}

PointSet brute_large(const FiniteRelation& phi, const PointSet& b) {
  PointSet out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x)
    for (int y : phi.image(x))
      if (b.test(y)) out.set(x);
  return out;
}

PointSet brute_small(const FiniteRelation& phi, const PointSet& b) {
  PointSet out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x) {
    bool inside = true;
    for (int y : phi.image(x)) inside = inside && b.test(y);
    if (inside) out.set(x);
  }
  return out;
}

}  // namespace

TEST_CASE("listed preimages") {
  CHECK(large_preimage(tent(), iv("[0,1/2]")) == iv("[0,1/4] u [3/4,1]"));
  CHECK(iterated_large_preimage(tent(), iv("(1/2,1]"), 1) == iv("(1/4,3/4)"));
  CHECK(iterated_large_preimage(tent(), iv("(1/2,1]"), 0) == iv("(1/2,1]"));
  CHECK(large_preimage(band_full(), iv("{1/3}")) == IntervalSet::unit());
  CHECK(iterated_large_preimage(band_full(), iv("(1/3,1/2)"), 3) == IntervalSet::unit());
  CHECK(large_preimage(usc_identity(), iv("(1/5,3/5)")) == iv("(1/5,3/5)"));
  CHECK(small_preimage(usc_identity(), iv("(0,1)")) == iv("(0,1)"));
  CHECK(small_preimage(band_full(), IntervalSet::unit()) == IntervalSet::unit());
  CHECK(small_preimage(band_full(), iv("[0,1)")).is_empty());
}

TEST_CASE("PL preimages agree with pointwise evaluation") {
  std::mt19937_64 rng(17);
  auto ms = maps();
  for (int t = 0; t < 150; ++t) {
    const auto& phi = ms[t % ms.size()];
    auto b = random_set(rng);
    auto large = large_preimage(phi, b), small = small_preimage(phi, b);
    auto extra = endpoints_of({large, small, b});
    for (const auto& c : phi.critical_points()) extra.push_back(c);
    for (const auto& x : samples(64, extra)) {
      auto v = phi.eval(x);
      REQUIRE(large.contains(x) == v.intersects(b));
      REQUIRE(small.contains(x) == v.is_subset_of(b));
    }
  }
}

TEST_CASE("preimage algebra on both carriers") {
  std::mt19937_64 rng(23);
  auto ms = maps();
  for (int t = 0; t < 100; ++t) {
    const auto& phi = ms[t % ms.size()];
    auto a = random_set(rng), b = random_set(rng);
    CHECK(large_preimage(phi, a | b) == (large_preimage(phi, a) | large_preimage(phi, b)));
    CHECK(large_preimage(phi, a & b).is_subset_of(large_preimage(phi, a) & large_preimage(phi, b)));
    CHECK(large_preimage(phi, a).is_subset_of(large_preimage(phi, a | b)));
    CHECK(small_preimage(phi, b) == large_preimage(phi, b.complement()).complement());
    if (phi.is_single_valued()) CHECK(small_preimage(phi, b) == large_preimage(phi, b));
    auto twice = large_preimage(phi, large_preimage(phi, b));
    CHECK(iterated_large_preimage(phi, b, 2) == twice);
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 7;
    FiniteRelation phi(FiniteMetricSpace::discrete(n), random_values(rng, n, 3));
    PointSet a(n, rng() % (1u << n)), b(n, rng() % (1u << n));
    CHECK(large_preimage(phi, a) == brute_large(phi, a));
    CHECK(small_preimage(phi, a) == brute_small(phi, a));
    CHECK(large_preimage(phi, a | b) == (large_preimage(phi, a) | large_preimage(phi, b)));
    CHECK(large_preimage(phi, a & b).is_subset_of(large_preimage(phi, a) & large_preimage(phi, b)));
    CHECK(small_preimage(phi, a) == ~large_preimage(phi, ~a));
    CHECK(iterated_large_preimage(phi, a, 3) == brute_large(phi, brute_large(phi, brute_large(phi, a))));
  }
}

TEST_CASE("intersection is not preserved") {
  // Both endpoints of the u.s.c. identity map see 0 and 1 at once.
  auto a = iv("[0,1/4]"), b = iv("[3/4,1]");
  CHECK(large_preimage(usc_identity(), a & b).is_empty());
  CHECK((large_preimage(usc_identity(), a) & large_preimage(usc_identity(), b)) == iv("{0,1}"));

  FiniteRelation split(FiniteMetricSpace::discrete(2), {{0, 1}, {1}});
  auto pa = make_point_set(2, {0}), pb = make_point_set(2, {1});
  CHECK(large_preimage(split, pa & pb).none());
  CHECK((large_preimage(split, pa) & large_preimage(split, pb)) == make_point_set(2, {0}));
}
