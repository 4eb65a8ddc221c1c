#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "mventropy/partition.hpp"

using namespace testing_support;

namespace {

using IP = OrderedPartition<IntervalSet>;

IP tent_p() { return make_partition(tent(), {iv("[0,1/2]"), iv("(1/2,1]")}); }
IP tent_beta() { return make_partition(tent(), {iv("(0,1)"), iv("{0}"), iv("{1}")}); }

double direct_entropy(const std::vector<Rational>& masses) {
  double h = 0;
  for (const auto& m : masses) {
    double x = to_double(m);
    if (x > 0) h -= x * std::log(x);
  }
  return h;
}

// Refinement levels from the definition, with the preimage computed by
// scanning the relation directly.
std::set<std::string> brute_level(const FiniteRelation& phi, const std::vector<PointSet>& p, int n) {
  auto pre = [&](PointSet b, int k) {
    for (int i = 0; i < k; ++i) {
      PointSet out(phi.size());
      for (std::size_t x = 0; x < phi.size(); ++x)
        for (int y : phi.image(x))
          if (b.test(y)) out.set(x);
      b = out;
    }
    return b;
  };
  std::vector<PointSet> cur = p;
  for (int k = 1; k < n; ++k) {
    std::vector<PointSet> tilde;
    PointSet used(phi.size());
    for (const auto& piece : p) {
      PointSet d = pre(piece, k) - used;
      used |= pre(piece, k);
      if (d.any()) tilde.push_back(d);
    }
    std::vector<PointSet> next;
    for (const auto& a : cur)
      for (const auto& b : tilde)
        if ((a & b).any()) next.push_back(a & b);
    cur = next;
  }
  std::set<std::string> out;
  for (const auto& s : cur) out.insert(to_string(s));
  return out;
}

}  // namespace

TEST_CASE("phi function") {
  CHECK(phi_fn(0.0) == 0.0);
  CHECK(phi_fn(1.0) == 0.0);
  CHECK(phi_fn(q(1, 2)) == doctest::Approx(-std::log(2.0) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(phi_fn(-0.5), std::domain_error);
}

TEST_CASE("partition entropy examples") {
  const auto leb = IntervalMeasure::lebesgue();
  CHECK(partition_entropy(leb, tent_p()) == doctest::Approx(std::log(2.0)));
  CHECK(partition_entropy(leb, make_partition(tent(), {IntervalSet::unit()})) == 0.0);
  CHECK(partition_entropy(leb, tent_beta()) == 0.0);
  CHECK(nz_count(leb, tent_beta()) == 1);
  CHECK(lemma1_check(leb, tent_beta()));
  // Each of (0,1)'s halves carries 1/2 of the conditioning piece.
  CHECK(conditional_entropy(leb, tent_p(), tent_beta()) == doctest::Approx(std::log(2.0)));
  CHECK(conditional_entropy(leb, tent_beta(), tent_p()) == doctest::Approx(0.0));

  FiniteMeasure mu({q(1, 2), q(1, 4), q(1, 8), q(1, 16), q(1, 16)});
  auto p = uniform_point_partition(5, 5);
  // 1/2·1 + 1/4·2 + 1/8·3 + 2·(1/16)·4 bits.
  CHECK(partition_entropy(mu, p) == doctest::Approx(15.0 / 8.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(partition_entropy(mu, p) < std::log(5.0));
  CHECK(nz_count(mu, p) == 5);
  CHECK(lemma1_check(mu, p));
  for (int m : {2, 4, 8}) {
    auto u = uniform_interval_partition(m);
    CHECK(partition_entropy(leb, u) == doctest::Approx(std::log(double(m))).epsilon(1e-14));
    CHECK(nz_count(leb, u) == static_cast<std::size_t>(m));
  }
  CHECK_THROWS_AS(make_partition(tent(), {iv("[0,1/2]"), iv("[1/2,1]")}), std::invalid_argument);
  CHECK_THROWS_AS(make_partition(tent(), {iv("[0,1/2)"), iv("(1/2,1]")}), std::invalid_argument);
}

TEST_CASE("tent counterexample") {
  CHECK(disjointify(tent(), tent_p(), 1).pieces == std::vector<IntervalSet>{iv("[0,1/4] u [3/4,1]"), iv("(1/4,3/4)")});
  CHECK(disjointify(tent(), tent_beta(), 1).pieces == std::vector<IntervalSet>{IntervalSet::unit()});
  CHECK(disjointify(tent(), tent_p(), 0) == tent_p());

  auto lp = refinement_sequence(tent(), tent_p(), 2);
  std::set<IntervalSet> got(lp[1].pieces.begin(), lp[1].pieces.end());
  CHECK(got == std::set<IntervalSet>{iv("[0,1/4]"), iv("(1/4,1/2]"), iv("(1/2,3/4)"), iv("[3/4,1]")});
  auto lb = refinement_sequence(tent(), tent_beta(), 2);
  CHECK(lb[1] == tent_beta());
  CHECK(lp[1].size() > lb[1].size());
  CHECK(lp[0] == tent_p());
}

TEST_CASE("refinement levels") {
  auto leb = IntervalMeasure::lebesgue();
  auto t = metric_entropy_estimate(leb, tent(), tent_p(), 5);
  for (std::size_t n = 1; n < t.cards.size(); ++n) {
    CHECK(t.cards[n] >= t.cards[n - 1]);
    CHECK(t.entropies[n] >= t.entropies[n - 1] - 1e-12);
  }
  for (std::size_t n = 0; n < t.cards.size(); ++n) CHECK(t.estimate.values[n] == doctest::Approx(t.entropies[n] / (n + 1)));

  auto space = FiniteMetricSpace::discrete(4);
  auto full = FiniteRelation::full(space);
  auto p = uniform_point_partition(4, 2);
  for (const auto& level : refinement_sequence(full, p, 4)) CHECK(level == p);
  auto fm = metric_entropy_estimate(FiniteMeasure::uniform(4), full, p, 8);
  CHECK(fm.estimate.values.back() == doctest::Approx(std::log(2.0) / 8));
  CHECK(fm.estimate.last_increment() == doctest::Approx(0.0));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    FiniteRelation phi(FiniteMetricSpace::discrete(n), random_values(rng, n, 2));
    std::vector<PointSet> pieces;
    {
      std::vector<PointSet> blocks(1 + rng() % 3, PointSet(n));
      for (std::size_t x = 0; x < n; ++x) blocks[rng() % blocks.size()].set(x);
      for (auto& b : blocks)
        if (b.any()) pieces.push_back(b);
    }
    auto part = make_partition(phi, pieces);
    auto seq = refinement_sequence(phi, part, 5);
    for (int k = 1; k <= 5; ++k) {
      std::set<std::string> got;
      for (const auto& s : seq[k - 1].pieces) got.insert(to_string(s));
      REQUIRE(got == brute_level(phi, pieces, k));
    }
    // On a finite carrier the cardinalities stabilize, so the increments reach 0.
    auto table = metric_entropy_estimate(FiniteMeasure::uniform(n), phi, part, 2 * static_cast<int>(n) + 2);
    CHECK(table.estimate.last_increment() == doctest::Approx(0.0));
  }
}

TEST_CASE("entropy against direct evaluation") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 9;
    std::vector<long> counts(n);
    for (auto& c : counts) c = static_cast<long>(rng() % 5);
    counts[rng() % n] += 1;
    auto mu = FiniteMeasure::from_counts(counts);
    auto p = uniform_point_partition(n, 1 + static_cast<int>(rng() % n));
    auto beta = uniform_point_partition(n, 1 + static_cast<int>(rng() % n));
    std::vector<Rational> masses;
    for (const auto& piece : p.pieces) {
      Rational m = 0;
      for (int x : members_of(piece)) m += mu[x];
      masses.push_back(m);
    }
    CHECK(partition_entropy(mu, p) == doctest::Approx(direct_entropy(masses)).epsilon(1e-12));
    // H(P|beta) = H(P v beta) - H(beta).
    double joint = partition_entropy(mu, join2(p, beta));
    CHECK(conditional_entropy(mu, p, beta) == doctest::Approx(joint - partition_entropy(mu, beta)).epsilon(1e-9));
  }
}

TEST_CASE("conditional entropy bound for close partitions") {
  // beta = {D_1, ..., D_k, B_0} with D_i inside P_i and mu(P_i \ D_i) = delta:
  // H(P | beta) <= mu(B_0) log k.
  const auto leb = IntervalMeasure::lebesgue();
  for (int k : {2, 3, 4}) {
    for (long inv : {8L, 32L, 128L}) {
      const Rational delta = q(1, inv * k);
      std::vector<IntervalSet> p_pieces, d_pieces;
      IntervalSet b0;
      for (int i = 0; i < k; ++i) {
        Rational lo = q(i, k), hi = q(i + 1, k);
        p_pieces.push_back(IntervalSet::make(lo, i == 0, hi, true));
        auto d = IntervalSet::closed(lo + delta, hi - delta);
        d_pieces.push_back(d);
        b0 = b0 | (p_pieces.back() - d);
      }
      auto p = make_partition(tent(), p_pieces);
      auto beta_pieces = d_pieces;
      beta_pieces.push_back(b0);
      auto beta = make_partition(tent(), beta_pieces);
      const double eps = to_double(delta);
      const double h = conditional_entropy(leb, p, beta);
      CHECK(h <= to_double(leb.measure(b0)) * std::log(double(k)) + 1e-12);
      CHECK(h < k * eps * std::log(double(k)) * 2 + 1e-12);
    }
  }
}

TEST_CASE("subadditivity on measure-preserving permutations") {
  // Permutations with the uniform measure satisfy the strong invariance
  // condition, so h(phi,P) <= h(phi,beta) + H(P|beta) at every level.
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto phi = FiniteRelation::from_function(FiniteMetricSpace::discrete(n), perm);
    auto mu = FiniteMeasure::uniform(n);
    auto p = uniform_point_partition(n, 1 + static_cast<int>(rng() % n));
    auto beta = uniform_point_partition(n, 1 + static_cast<int>(rng() % n));
    const int depth = 6;
    auto hp = metric_entropy_estimate(mu, phi, p, depth);
    auto hb = metric_entropy_estimate(mu, phi, beta, depth);
    const double cond = conditional_entropy(mu, p, beta);
    for (int k = 0; k < depth; ++k) CHECK(hb.estimate.values[k] + cond >= hp.estimate.values[k] - 1e-12);
  }
}
