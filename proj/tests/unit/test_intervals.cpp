#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "mventropy/errors.hpp"
#include "mventropy/rational.hpp"

using namespace testing_support;

namespace {

IntervalSet random_set(std::mt19937_64& rng) {
  std::vector<Interval> raw;
  const int pieces = static_cast<int>(rng() % 4);
  for (int i = 0; i < pieces; ++i) {
    long a = static_cast<long>(rng() % 13), b = static_cast<long>(rng() % 13);
    if (a > b) std::swap(a, b);
    raw.push_back({{q(a, 12), rng() % 2 == 0}, {q(b, 12), rng() % 2 == 0}});
    if (a == b) raw.back().lo.closed = raw.back().hi.closed = rng() % 3 != 0;
  }
  return IntervalSet::normalize(raw);
}

}  // namespace

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("0.25") == q(1, 4));
  CHECK(parse_rational("-2") == q(-2));
  CHECK(to_string(q(6, 8)) == "3/4");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("normalize merges and sorts") {
  CHECK(IntervalSet::normalize({{{q(0), true}, {q(1, 4), true}}, {{q(1, 4), true}, {q(1, 2), true}}}) ==
        IntervalSet::closed(q(0), q(1, 2)));
  CHECK(IntervalSet::normalize({{{q(1, 4), false}, {q(1, 2), true}}, {{q(0), true}, {q(1, 4), true}}}) ==
        IntervalSet::closed(q(0), q(1, 2)));
  CHECK((iv("(0,1)") | iv("{0}") | iv("{1}")) == IntervalSet::unit());
  // Two open pieces touching at an excluded point stay apart.
  CHECK(iv("(0,1/2) u (1/2,1)").pieces().size() == 2);
  CHECK_THROWS_AS(IntervalSet::closed(q(0), q(3, 2)), std::domain_error);
  CHECK_THROWS_AS(IntervalSet::closed(q(1, 2), q(1, 4)), std::domain_error);
}

TEST_CASE("set operations on the listed cases") {
  CHECK((iv("[0,1/2]") & iv("[0,1/4] u [3/4,1]")) == iv("[0,1/4]"));
  CHECK((iv("(1/2,1]") - iv("(1/4,3/4)")) == iv("[3/4,1]"));
  CHECK(iv("(0,1)").complement() == iv("{0} u {1}"));
  CHECK(iv("[0,1/2]").lebesgue() == q(1, 2));
  CHECK(iv("{0} u {1}").lebesgue() == 0);
  CHECK(iv("(1/4,1/2] u (1/2,3/4)").lebesgue() == q(1, 2));
}

TEST_CASE("literal round trip") {
  for (const char* s : {"[0,1/4] u (1/2,3/4) u {1}", "{}", "[0,1]", "{0,1}", "(1/3,2/3]"}) {
    auto a = iv(s);
    CHECK(IntervalSet::parse(a.to_string()) == a);
  }
  CHECK(iv("{}").is_empty());
  CHECK_THROWS_AS(iv("[0,1"), ParseError);
  CHECK_THROWS_AS(iv("[0,2]"), ParseError);
  CHECK_THROWS_AS(iv("(a,b)"), ParseError);
}

TEST_CASE("random sets agree with the pointwise membership oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    auto a = random_set(rng), b = random_set(rng);
    auto u = a | b, i = a & b, d = a - b, c = a.complement();
    CHECK(u.lebesgue() + i.lebesgue() == a.lebesgue() + b.lebesgue());
    CHECK(c.complement() == a);
    CHECK(IntervalSet::normalize(u.pieces()) == u);
    CHECK(a.is_subset_of(u));
    CHECK(i.is_subset_of(a));
    for (const auto& x : samples(48, endpoints_of({a, b}))) {
      REQUIRE(u.contains(x) == (a.contains(x) || b.contains(x)));
      REQUIRE(i.contains(x) == (a.contains(x) && b.contains(x)));
      REQUIRE(d.contains(x) == (a.contains(x) && !b.contains(x)));
      REQUIRE(c.contains(x) == !a.contains(x));
    }
  }
}

TEST_CASE("relative openness in [0,1]") {
  CHECK(iv("[0,1/2)").is_relatively_open());
  CHECK(iv("(1/2,1]").is_relatively_open());
  CHECK(iv("[0,1]").is_relatively_open());
  CHECK(iv("{}").is_relatively_open());
  CHECK_FALSE(iv("[0,1/2]").is_relatively_open());
  CHECK_FALSE(iv("[0,5/8) u {1}").is_relatively_open());
}

TEST_CASE("cell decomposition reassembles sets") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto a = random_set(rng), b = random_set(rng);
    auto cells = CellDecomposition::common({&a, &b});
    CHECK(cells.assemble(cells.membership(a)) == a);
    Rational total = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      CHECK(cells.cell(k).contains(cells.sample(k)));
      total += cells.length(k);
    }
    CHECK(total == 1);
  }
}
