#include "mventropy/property_suites.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

#include "mventropy/cover_entropy.hpp"
#include "mventropy/invariance.hpp"
#include "mventropy/orbits.hpp"
#include "mventropy/partition.hpp"
#include "mventropy/random_instances.hpp"
#include "mventropy/selections.hpp"

namespace mventropy {

using nlohmann::json;

namespace {

using Values = std::vector<std::vector<int>>;

// Plain data so that shrinking can delete points and edges.
struct Case {
  std::vector<Rational> coords;
  Values values;
  std::vector<Values> extra;  // further relations on the same points
  std::vector<std::int64_t> weights;
  std::vector<int> labels;  // partition block of each point
  std::vector<std::vector<int>> cover;
  int depth = 1;
  int k = 1;
  std::vector<Rational> eps;

  std::size_t size() const { return coords.size(); }
  FiniteMetricSpace space() const { return FiniteMetricSpace::on_line(coords); }
  FiniteRelation relation() const { return FiniteRelation(space(), values); }

  FiniteMeasure measure() const { return FiniteMeasure::from_counts(std::vector<long>(weights.begin(), weights.end())); }

  OrderedPartition<PointSet> partition() const {
    std::map<int, PointSet> blocks;
    for (std::size_t x = 0; x < size(); ++x) blocks.try_emplace(labels[x], size()).first->second.set(x);
    OrderedPartition<PointSet> p;
    for (auto& [label, b] : blocks) p.pieces.push_back(b);
    return p;
  }

  Cover<PointSet> point_cover() const {
    Cover<PointSet> c;
    for (const auto& m : cover) c.members.push_back(make_point_set(size(), m));
    return c;
  }

  json to_json() const {
    json j;
    json cs = json::array();
    for (const auto& c : coords) cs.push_back(to_string(c));
    j["coords"] = cs;
    j["values"] = values;
    if (!extra.empty()) j["extra_relations"] = extra;
    if (!weights.empty()) j["weights"] = weights;
    if (!labels.empty()) j["labels"] = labels;
    if (!cover.empty()) j["cover"] = cover;
    j["depth"] = depth;
    j["k"] = k;
    json es = json::array();
    for (const auto& e : eps) es.push_back(to_string(e));
    j["eps"] = es;
    return j;
  }
};

struct Verdict {
  bool ok = true;
  bool exact = true;
  std::size_t checks = 0;
  std::string message;
};

bool drop_point(std::vector<int>& list, int x) {
  std::vector<int> out;
  for (int v : list)
    if (v != x) out.push_back(v > x ? v - 1 : v);
  list = std::move(out);
  return !list.empty();
}

std::optional<Case> without_point(const Case& c, int x) {
  if (c.size() <= 1) return std::nullopt;
  Case d = c;
  d.coords.erase(d.coords.begin() + x);
  auto fix = [&](Values& v) {
    v.erase(v.begin() + x);
    for (auto& img : v)
      if (!drop_point(img, x)) return false;
    return true;
  };
  if (!fix(d.values)) return std::nullopt;
  for (auto& e : d.extra)
    if (!fix(e)) return std::nullopt;
  if (!d.weights.empty()) {
    d.weights.erase(d.weights.begin() + x);
    bool any = false;
    for (auto w : d.weights) any = any || w > 0;
    if (!any) return std::nullopt;
  }
  if (!d.labels.empty()) d.labels.erase(d.labels.begin() + x);
  std::vector<std::vector<int>> members;
  for (auto m : d.cover)
    if (drop_point(m, x)) members.push_back(std::move(m));
  d.cover = std::move(members);
  return d;
}

// Greedy shrinking: delete points, then single edges, while the case still fails.
Case shrink(Case c, const std::function<Verdict(const Case&)>& check) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < static_cast<int>(c.size()) && !changed; ++x) {
      auto d = without_point(c, x);
      if (d && !check(*d).ok) {
        c = std::move(*d);
        changed = true;
      }
    }
    for (std::size_t x = 0; x < c.size() && !changed; ++x) {
      for (std::size_t j = 0; j < c.values[x].size() && c.values[x].size() > 1 && !changed; ++j) {
        Case d = c;
        d.values[x].erase(d.values[x].begin() + static_cast<long>(j));
        if (!check(d).ok) {
          c = std::move(d);
          changed = true;
        }
      }
    }
  }
  return c;
}

Values random_values(Rng& rng, const FiniteMetricSpace& space, std::size_t lo, std::size_t hi) {
  auto r = random_relation(rng, space, lo, hi);
  Values v;
  for (std::size_t x = 0; x < r.size(); ++x) v.push_back(r.image(x));
  return v;
}

Case base_case(Rng& rng, std::size_t min_n, std::size_t max_n, std::size_t min_deg, std::size_t max_deg) {
  Case c;
  auto space = random_line_space(rng, uniform_index(rng, min_n, max_n));
  for (std::size_t i = 0; i < space.size(); ++i) c.coords.push_back(space.distance(0, i));
  c.values = random_values(rng, space, min_deg, max_deg);
  return c;
}

// ---------------------------------------------------------------------------

Case gen_entropy_bound(Rng& rng) {
  Case c = base_case(rng, 1, 12, 1, 1);
  c.weights = random_weights(rng, c.size());
  const std::size_t blocks = uniform_index(rng, 1, c.size());
  for (std::size_t x = 0; x < c.size(); ++x) c.labels.push_back(static_cast<int>(uniform_index(rng, 0, blocks - 1)));
  return c;
}

Verdict check_entropy_bound(const Case& c) {
  Verdict v;
  const auto p = c.partition();
  const auto mu = c.measure();
  const double h = partition_entropy(mu, p);
  const std::size_t nz = nz_count(mu, p);
  v.checks = 2;
  if (!lemma1_check(mu, p)) {
    v.ok = false;
    v.message = "H = " + std::to_string(h) + " exceeds log NZ = " + std::to_string(std::log(double(nz)));
    return v;
  }
  // Equal mass on every block attains the bound.
  std::vector<Rational> w(c.size());
  const auto k = static_cast<long>(p.size());
  for (const auto& b : p.pieces)
    for (auto x : members_of(b)) w[x] = Rational(1, k * static_cast<long>(b.count()));
  const FiniteMeasure balanced(w);
  const double hb = partition_entropy(balanced, p);
  if (std::fabs(hb - std::log(double(k))) > kEntropyBoundSlack) {
    v.ok = false;
    v.message = "balanced measure gives H = " + std::to_string(hb) + ", expected log " + std::to_string(k);
  }
  return v;
}

Case gen_span_le_sep(Rng& rng) {
  Case c = base_case(rng, 1, 8, 1, 3);
  c.depth = static_cast<int>(uniform_index(rng, 1, 5));
  c.eps = {Rational(1, 2), Rational(1, 4), Rational(1, 8)};
  return c;
}

void check_levels(const OrbitEntropyReport& rep, Verdict& v) {
  for (const auto& l : rep.levels) {
    ++v.checks;
    if (!l.sep.exact || !l.span.exact) {
      v.exact = false;
      continue;
    }
    if (l.span.value > l.sep.value) {
      v.ok = false;
      v.message = rep.family + " at eps=" + to_string(l.eps) + " n=" + std::to_string(l.n) + ": r=" +
                  std::to_string(l.span.value) + " > s=" + std::to_string(l.sep.value);
      return;
    }
  }
}

Verdict check_span_le_sep(const Case& c) {
  Verdict v;
  const auto phi = c.relation();
  check_levels(h_KT_estimate(phi, c.eps, c.depth), v);
  if (v.ok) check_levels(h_CM_estimate(phi, c.eps, c.depth), v);
  return v;
}

Case gen_iterate(Rng& rng) {
  Case c = base_case(rng, 1, 7, 1, 2);
  auto cover = random_cover(rng, c.size(), uniform_index(rng, 2, 4));
  for (const auto& m : cover.members) c.cover.push_back(members_of(m));
  c.depth = static_cast<int>(uniform_index(rng, 1, 3));
  c.k = static_cast<int>(uniform_index(rng, 1, 3));
  return c;
}

Verdict check_iterate(const Case& c) {
  Verdict v;
  v.checks = 2;
  const auto r = iterate_refinement_check(c.relation(), c.point_cover(), c.depth, c.k);
  v.exact = r.exact;
  if (!r.refines) {
    v.ok = false;
    v.message = "fine join does not refine the coarse join";
  } else if (r.exact && !r.count_ok) {
    v.ok = false;
    v.message = "N(coarse) = " + std::to_string(r.coarse_count) + " > N(fine) = " + std::to_string(r.fine_count);
  }
  return v;
}

Case gen_invariance(Rng& rng) {
  Case c = base_case(rng, 1, 5, 1, 3);
  c.weights = random_weights(rng, c.size());
  return c;
}

Verdict check_invariance(const Case& c) {
  Verdict v;
  v.checks = 1;
  const auto phi = c.relation();
  const auto mu = c.measure();
  const auto flow = verify_invariance_flow(mu, phi);
  const auto brute = verify_invariance_bruteforce(mu, phi);
  if (flow.invariant != brute.invariant) {
    v.ok = false;
    v.message = std::string("flow says ") + (flow.invariant ? "invariant" : "not invariant") + ", brute force disagrees";
  }
  return v;
}

Case gen_stationary(Rng& rng) { return base_case(rng, 1, 8, 1, 3); }

Verdict check_stationary(const Case& c) {
  Verdict v;
  v.checks = 1;
  const auto phi = c.relation();
  const auto mu = find_invariant_measure(phi);
  if (!verify_invariance_flow(mu, phi).invariant) {
    v.ok = false;
    v.message = "constructed measure is not invariant";
  }
  return v;
}

Case gen_sandwich(Rng& rng) {
  Case c = base_case(rng, 1, 5, 1, 3);
  c.depth = static_cast<int>(uniform_index(rng, 1, 3));
  c.eps = {Rational(1, 2), Rational(1, 4)};
  return c;
}

Verdict check_sandwich(const Case& c) {
  Verdict v;
  SandwichInput in;
  in.depth = c.depth;
  in.eps_ladder = c.eps;
  in.selection_limit = 1000;
  const auto rep = sandwich_report(c.relation(), in);
  for (const auto& r : rep.records) {
    if (!r.asserted) continue;
    ++v.checks;
    if (r.verdict == "indeterminate") v.exact = false;
    if (r.verdict == "violated" && v.ok) {
      v.ok = false;
      v.message = r.name + " fails at " + r.level;
    }
  }
  if (!rep.selections_complete) v.exact = false;
  return v;
}

Case gen_compose(Rng& rng) {
  Case c = base_case(rng, 1, 7, 1, 3);
  for (int i = 0; i < 2; ++i) c.extra.push_back(random_values(rng, c.space(), 1, 3));
  c.k = static_cast<int>(uniform_index(rng, 0, 3));
  c.depth = static_cast<int>(uniform_index(rng, 0, 3));
  return c;
}

Verdict check_compose(const Case& c) {
  Verdict v;
  const auto space = c.space();
  const FiniteRelation a(space, c.values), b(space, c.extra[0]), d(space, c.extra[1]);
  v.checks = 3;
  if (!(compose(compose(a, b), d) == compose(a, compose(b, d)))) {
    v.ok = false;
    v.message = "composition is not associative";
    return v;
  }
  if (!(a.power(c.k + c.depth) == compose(a.power(c.k), a.power(c.depth)))) {
    v.ok = false;
    v.message = "power(k + j) differs from power(k) after power(j)";
    return v;
  }
  for (std::uint32_t mask = 0; mask < (1u << c.size()); ++mask) {
    PointSet s(c.size(), mask);
    if (large_preimage(compose(a, b), s) != large_preimage(b, large_preimage(a, s))) {
      v.ok = false;
      v.message = "preimage of a composition differs from the iterated preimage";
      return v;
    }
  }
  return v;
}

struct Suite {
  std::function<Case(Rng&)> generate;
  std::function<Verdict(const Case&)> check;
};

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> all = {
      {"entropy-bound", {gen_entropy_bound, check_entropy_bound}},
      {"span-le-sep", {gen_span_le_sep, check_span_le_sep}},
      {"iterate-refinement", {gen_iterate, check_iterate}},
      {"invariance-flow", {gen_invariance, check_invariance}},
      {"stationary", {gen_stationary, check_stationary}},
      {"selection-sandwich", {gen_sandwich, check_sandwich}},
      {"compose-assoc", {gen_compose, check_compose}},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& property_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, s] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

json PropertySuiteReport::to_json() const {
  return {{"suite", name},   {"seed", seed},     {"count", count},   {"passed", passed},
          {"failed", failed}, {"inexact", inexact}, {"counterexample", counterexample}, {"stats", stats}};
}

PropertySuiteReport run_property_suite(const std::string& name, std::uint64_t seed, std::size_t count) {
  auto it = suites().find(name);
  if (it == suites().end()) throw std::invalid_argument("unknown property suite \"" + name + "\"");
  const Suite& suite = it->second;
  PropertySuiteReport rep;
  rep.name = name;
  rep.seed = seed;
  rep.count = count;
  Rng rng(seed);
  std::size_t checks = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Case c = suite.generate(rng);
    const Verdict v = suite.check(c);
    checks += v.checks;
    if (!v.exact) ++rep.inexact;
    if (v.ok) {
      ++rep.passed;
      continue;
    }
    ++rep.failed;
    if (rep.counterexample.is_null()) {
      const Case small = shrink(c, suite.check);
      rep.counterexample = {{"case_index", i},
                            {"message", v.message},
                            {"original", c.to_json()},
                            {"shrunk", small.to_json()},
                            {"shrunk_message", suite.check(small).message}};
    }
  }
  rep.stats = {{"checks", checks}};
  return rep;
}

}  // namespace mventropy
