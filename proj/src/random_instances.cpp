#include "mventropy/random_instances.hpp"

#include <algorithm>
#include <numeric>

namespace mventropy {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

FiniteMetricSpace random_line_space(Rng& rng, std::size_t n) {
  std::vector<int> grid(17);
  std::iota(grid.begin(), grid.end(), 0);
  std::shuffle(grid.begin(), grid.end(), rng);
  grid.resize(std::min<std::size_t>(n, grid.size()));
  std::sort(grid.begin(), grid.end());
  std::vector<Rational> coords;
  for (int g : grid) coords.emplace_back(g, 16);
  for (auto& c : coords) c.canonicalize();
  return FiniteMetricSpace::on_line(coords);
}

FiniteRelation random_relation(Rng& rng, const FiniteMetricSpace& space, std::size_t min_degree,
                               std::size_t max_degree) {
  const std::size_t n = space.size();
  std::vector<std::vector<int>> values(n);
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t d = uniform_index(rng, std::min(min_degree, n), std::min(max_degree, n));
    std::shuffle(pts.begin(), pts.end(), rng);
    values[x].assign(pts.begin(), pts.begin() + static_cast<long>(std::max<std::size_t>(d, 1)));
  }
  return FiniteRelation(space, values);
}

std::vector<std::int64_t> random_weights(Rng& rng, std::size_t n, std::int64_t max_weight) {
  std::uniform_int_distribution<std::int64_t> w(0, max_weight);
  std::vector<std::int64_t> out(n);
  do {
    for (auto& v : out) v = w(rng);
  } while (std::all_of(out.begin(), out.end(), [](std::int64_t v) { return v == 0; }));
  return out;
}

FiniteMeasure random_measure(Rng& rng, std::size_t n, std::int64_t max_weight) {
  auto w = random_weights(rng, n, max_weight);
  return FiniteMeasure::from_counts(std::vector<long>(w.begin(), w.end()));
}

OrderedPartition<PointSet> random_partition(Rng& rng, std::size_t n, std::size_t max_blocks) {
  std::vector<PointSet> blocks(std::max<std::size_t>(max_blocks, 1), PointSet(n));
  for (std::size_t x = 0; x < n; ++x) blocks[uniform_index(rng, 0, blocks.size() - 1)].set(x);
  OrderedPartition<PointSet> p;
  for (auto& b : blocks)
    if (b.any()) p.pieces.push_back(std::move(b));
  return p;
}

Cover<PointSet> random_cover(Rng& rng, std::size_t n, std::size_t members) {
  Cover<PointSet> c;
  for (std::size_t i = 0; i < std::max<std::size_t>(members, 1); ++i) {
    PointSet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if (rng() & 1) s.set(x);
    if (s.none()) s.set(uniform_index(rng, 0, n - 1));
    c.members.push_back(std::move(s));
  }
  for (std::size_t x = 0; x < n; ++x) {
    bool covered = std::any_of(c.members.begin(), c.members.end(), [&](const PointSet& s) { return s.test(x); });
    if (!covered) c.members[uniform_index(rng, 0, c.members.size() - 1)].set(x);
  }
  return c;
}

}  // namespace mventropy
