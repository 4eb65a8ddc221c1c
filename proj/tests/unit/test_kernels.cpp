#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mventropy/kernels.hpp"
#include "mventropy/orbits.hpp"

using namespace testing_support;

// Each OpenMP kernel against its serial reference, and the references
// against definitions.

TEST_CASE("close matrix") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 7;
    auto phi = relation_on_line(random_coords(rng, n), random_values(rng, n, 2));
    const int len = 1 + static_cast<int>(rng() % 4);
    auto orbits = enumerate_orbits(phi, len);
    const int max_rank = static_cast<int>(rng() % phi.space().levels().size());
    auto a = serial::close_matrix(phi.space(), orbits.block, max_rank);
    auto b = parallel::close_matrix(phi.space(), orbits.block, max_rank);
    REQUIRE(a == b);
    const Rational& eps = phi.space().levels()[max_rank];
    for (std::size_t i = 0; i < orbits.size(); ++i)
      for (std::size_t j = 0; j < orbits.size(); ++j)
        REQUIRE(a[i].test(j) == (brute_dn(phi.space(), orbits.orbit(i), orbits.orbit(j)) <= eps));
  }
}

TEST_CASE("bottleneck ranks") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 6;
    auto phi = relation_on_line(random_coords(rng, n), random_values(rng, n, 3));
    const int len = 1 + static_cast<int>(rng() % 4);
    auto a = serial::cm_ranks(phi, len);
    REQUIRE(a == parallel::cm_ranks(phi, len));
    auto orbits = brute_orbits(phi, len);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        Rational best = 100;
        for (const auto& u : orbits)
          for (const auto& v : orbits)
            if (u[0] == static_cast<int>(x) && v[0] == static_cast<int>(y)) best = std::min(best, brute_dn(phi.space(), u, v));
        REQUIRE(phi.space().levels()[a[x * n + y]] == best);
      }
  }
}

TEST_CASE("invariance scan") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<std::int64_t> w(n);
    for (auto& v : w) v = static_cast<std::int64_t>(rng() % 6);
    std::vector<std::uint32_t> pre(n);
    for (auto& p : pre) p = static_cast<std::uint32_t>(rng() % (1u << n));
    auto a = serial::first_invariance_violation(w, pre);
    REQUIRE(a == parallel::first_invariance_violation(w, pre));
    std::optional<std::uint32_t> oracle;
    for (std::uint32_t mask = 1; mask < (1u << n) && !oracle; ++mask) {
      std::uint32_t p = 0;
      std::int64_t wa = 0, wp = 0;
      for (std::size_t y = 0; y < n; ++y)
        if (mask >> y & 1) {
          p |= pre[y];
          wa += w[y];
        }
      for (std::size_t x = 0; x < n; ++x)
        if (p >> x & 1) wp += w[x];
      if (wp < wa) oracle = mask;
    }
    CHECK(a == oracle);
  }
}

TEST_CASE("pair scan") {
  std::mt19937_64 rng(4);
  auto random_table = [&](std::size_t rows, std::size_t universe) {
    std::vector<PointSet> sets;
    for (std::size_t i = 0; i < rows; ++i) {
      PointSet s(universe);
      for (std::size_t e = 0; e < universe; ++e)
        if (rng() % 3 == 0) s.set(e);
      sets.push_back(s);
    }
    return sets;
  };
  for (int t = 0; t < 60; ++t) {
    const std::size_t atoms = 1 + rng() % 70, cells = 1 + rng() % 90, members = 1 + rng() % 40;
    auto atom_pre = random_table(atoms, cells);
    auto member_atoms = random_table(members, atoms);
    std::vector<PointSet> member_pre;
    for (const auto& m : member_atoms) {
      PointSet p(cells);
      for (std::size_t a = 0; a < atoms; ++a)
        if (m.test(a)) p |= atom_pre[a];
      member_pre.push_back(p);
    }
    A8Tables tab;
    tab.member_atoms = MaskTable::from_point_sets(member_atoms, atoms);
    tab.member_pre = MaskTable::from_point_sets(member_pre, cells);
    tab.atom_pre = MaskTable::from_point_sets(atom_pre, cells);
    for (std::size_t c = 0; c < cells; ++c) tab.cell_weight.push_back(static_cast<std::int64_t>(rng() % 3));
    for (std::size_t a = 0; a < atoms; ++a) tab.atom_weight.push_back(static_cast<std::int64_t>(rng() % 3));
    auto weight_cells = [&](const PointSet& s) {
      std::int64_t w = 0;
      for (std::size_t c = 0; c < cells; ++c)
        if (s.test(c)) w += tab.cell_weight[c];
      return w;
    };
    for (auto cmp : {A8Compare::Equal, A8Compare::AtMost, A8Compare::AtLeast}) {
      auto got = serial::first_a8_failure(tab, cmp);
      REQUIRE(got == parallel::first_a8_failure(tab, cmp));
      auto bad = [&](std::int64_t lhs, std::int64_t rhs) {
        return cmp == A8Compare::Equal ? lhs != rhs : cmp == A8Compare::AtMost ? lhs > rhs : lhs < rhs;
      };
      std::optional<A8Failure> oracle;
      for (std::size_t i = 0; i < members && !oracle; ++i) {
        std::int64_t wa = 0;
        for (std::size_t a = 0; a < atoms; ++a)
          if (member_atoms[i].test(a)) wa += tab.atom_weight[a];
        if (bad(weight_cells(member_pre[i]), wa)) oracle = A8Failure{i, std::nullopt};
      }
      for (std::size_t i = 0; i < members && !oracle; ++i)
        for (std::size_t j = i; j < members && !oracle; ++j) {
          PointSet common = member_atoms[i] & member_atoms[j], pre(cells);
          for (std::size_t a = 0; a < atoms; ++a)
            if (common.test(a)) pre |= atom_pre[a];
          if (bad(weight_cells(member_pre[i] & member_pre[j]), weight_cells(pre))) oracle = A8Failure{i, j};
        }
      CHECK(got == oracle);
    }
  }
}

TEST_CASE("integer scaling") {
  auto s = scale_to_integers({q(1, 2), q(1, 3), q(1, 6), q(0)});
  CHECK(s == std::vector<std::int64_t>{3, 2, 1, 0});
  CHECK_THROWS_AS(scale_to_integers({q(1, 1000003), q(1, 1000033), q(1, 1000037), q(1, 1000039)}), std::overflow_error);
}
