#include "mventropy/set_cover.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mventropy {

namespace {

void check_covers(std::size_t universe, const std::vector<PointSet>& sets) {
  PointSet all(universe);
  for (const auto& s : sets) {
    if (s.size() != universe) throw std::invalid_argument("set cover: set size does not match the universe");
    all |= s;
  }
  if (!all.all()) throw std::invalid_argument("set cover: sets do not cover the universe");
}

class Solver {
 public:
  Solver(std::size_t universe, std::vector<PointSet> sets, std::size_t node_limit)
      : universe_(universe), sets_(std::move(sets)), node_limit_(node_limit) {
    covering_.assign(universe_, PointSet(sets_.size()));
    for (std::size_t s = 0; s < sets_.size(); ++s)
      for (auto e = sets_[s].find_first(); e != PointSet::npos; e = sets_[s].find_next(e)) covering_[e].set(s);
    cover_count_.resize(universe_);
    for (std::size_t e = 0; e < universe_; ++e) cover_count_[e] = covering_[e].count();
  }

  std::size_t packing_bound(const PointSet& uncovered) const {
    // Elements with few covering sets first tightens the bound.
    std::vector<std::size_t> elems;
    for (auto e = uncovered.find_first(); e != PointSet::npos; e = uncovered.find_next(e)) elems.push_back(e);
    std::stable_sort(elems.begin(), elems.end(),
                     [&](std::size_t a, std::size_t b) { return cover_count_[a] < cover_count_[b]; });
    PointSet used(sets_.size());
    std::size_t bound = 0;
    for (std::size_t e : elems) {
      if (covering_[e].intersects(used)) continue;
      used |= covering_[e];
      ++bound;
    }
    return bound;
  }

  void solve(std::vector<std::size_t> warm_start) {
    best_ = std::move(warm_start);
    PointSet uncovered(universe_);
    uncovered.set();
    root_bound_ = packing_bound(uncovered);
    std::vector<std::size_t> chosen;
    if (best_.size() > root_bound_) branch(uncovered, chosen);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  bool complete() const { return nodes_ <= node_limit_; }
  std::size_t root_bound() const { return root_bound_; }

 private:
  void branch(const PointSet& uncovered, std::vector<std::size_t>& chosen) {
    if (++nodes_ > node_limit_) return;
    if (uncovered.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(uncovered) >= best_.size()) return;

    std::size_t pick = PointSet::npos;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (auto e = uncovered.find_first(); e != PointSet::npos; e = uncovered.find_next(e)) {
      if (cover_count_[e] < fewest) {
        fewest = cover_count_[e];
        pick = e;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> options;  // (gain, set)
    for (auto s = covering_[pick].find_first(); s != PointSet::npos; s = covering_[pick].find_next(s)) {
      options.emplace_back((sets_[s] & uncovered).count(), s);
    }
    std::stable_sort(options.begin(), options.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, s] : options) {
      chosen.push_back(s);
      branch(uncovered - sets_[s], chosen);
      chosen.pop_back();
      if (nodes_ > node_limit_) return;
    }
  }

  std::size_t universe_;
  std::vector<PointSet> sets_;
  std::vector<PointSet> covering_;
  std::vector<std::size_t> cover_count_;
  std::vector<std::size_t> best_;
  std::size_t node_limit_;
  std::size_t nodes_ = 0;
  std::size_t root_bound_ = 0;
};

}  // namespace

SetCoverResult greedy_set_cover(std::size_t universe, const std::vector<PointSet>& sets) {
  check_covers(universe, sets);
  SetCoverResult out;
  PointSet uncovered(universe);
  uncovered.set();
  while (uncovered.any()) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t gain = (sets[s] & uncovered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best = s;
      }
    }
    out.chosen.push_back(best);
    uncovered -= sets[best];
  }
  out.size = out.chosen.size();
  out.exact = false;
  return out;
}

SetCoverResult min_set_cover(std::size_t universe, const std::vector<PointSet>& sets, const SetCoverOptions& options) {
  check_covers(universe, sets);
  if (universe == 0) return {};

  // Drop duplicates and sets contained in another set; keep the first index.
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sets[a].count() > sets[b].count(); });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    bool dominated = false;
    for (std::size_t k : kept) {
      if (sets[idx].is_subset_of(sets[k])) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<PointSet> reduced;
  reduced.reserve(kept.size());
  for (std::size_t k : kept) reduced.push_back(sets[k]);

  SetCoverResult greedy = greedy_set_cover(universe, reduced);
  Solver solver(universe, reduced, options.node_limit);

  SetCoverResult out;
  if (reduced.size() > options.exact_threshold) {
    out.chosen = greedy.chosen;
    out.lower_bound = solver.packing_bound(full_point_set(universe));
    out.exact = out.lower_bound == greedy.size;
  } else {
    solver.solve(greedy.chosen);
    out.chosen = solver.best();
    out.lower_bound = solver.complete() ? out.chosen.size() : solver.root_bound();
    out.exact = solver.complete();
  }
  for (auto& c : out.chosen) c = kept[c];
  std::sort(out.chosen.begin(), out.chosen.end());
  out.size = out.chosen.size();
  return out;
}

}  // namespace mventropy
