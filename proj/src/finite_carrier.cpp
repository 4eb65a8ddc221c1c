#include "mventropy/finite_carrier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "mventropy/errors.hpp"

namespace mventropy {

PointSet make_point_set(std::size_t n, const std::vector<int>& members) {
  PointSet s(n);
  for (int m : members) {
    if (m < 0 || static_cast<std::size_t>(m) >= n) throw std::out_of_range("point index out of range");
    s.set(static_cast<std::size_t>(m));
  }
  return s;
}

PointSet full_point_set(std::size_t n) {
  PointSet s(n);
  s.set();
  return s;
}

std::vector<int> members_of(const PointSet& s) {
  std::vector<int> out;
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

std::string to_string(const PointSet& s) {
  std::string out = "{";
  bool first = true;
  for (int m : members_of(s)) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

FiniteMetricSpace::FiniteMetricSpace(const std::vector<std::vector<Rational>>& dist) : n_(dist.size()) {
  if (n_ == 0) throw std::invalid_argument("metric space needs at least one point");
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist[i].size() != n_) throw std::invalid_argument("distance matrix is not square");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist[i][i] != 0) throw std::invalid_argument("d(i,i) must be 0");
    for (std::size_t j = 0; j < n_; ++j) {
      if (dist[i][j] != dist[j][i]) throw std::invalid_argument("distance matrix is not symmetric");
      if (i != j && dist[i][j] <= 0) throw std::invalid_argument("d(i,j) must be positive for i != j");
    }
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (dist[i][j] > dist[i][k] + dist[k][j]) throw std::invalid_argument("triangle inequality fails");

  for (const auto& row : dist) levels_.insert(levels_.end(), row.begin(), row.end());
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  if (levels_.size() > std::numeric_limits<Rank>::max()) throw std::invalid_argument("too many distinct distances");
  ranks_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      auto it = std::lower_bound(levels_.begin(), levels_.end(), dist[i][j]);
      ranks_[i * n_ + j] = static_cast<Rank>(it - levels_.begin());
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::on_line(const std::vector<Rational>& coords) {
  std::vector<std::vector<Rational>> d(coords.size(), std::vector<Rational>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) d[i][j] = abs(coords[i] - coords[j]);
  return FiniteMetricSpace(d);
}

FiniteMetricSpace FiniteMetricSpace::discrete(std::size_t n) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  return FiniteMetricSpace(d);
}

FiniteMetricSpace FiniteMetricSpace::from_ranks(std::size_t n, std::vector<Rational> levels,
                                                std::vector<Rank> ranks) {
  FiniteMetricSpace out;
  out.n_ = n;
  out.levels_ = std::move(levels);
  out.ranks_ = std::move(ranks);
  return out;
}

int FiniteMetricSpace::rank_at_most(const Rational& eps) const {
  auto it = std::upper_bound(levels_.begin(), levels_.end(), eps);
  return static_cast<int>(it - levels_.begin()) - 1;
}

// ---------------------------------------------------------------------------

FiniteRelation::FiniteRelation(FiniteMetricSpace space, std::vector<std::vector<int>> values)
    : space_(std::move(space)), values_(std::move(values)) {
  const std::size_t n = space_.size();
  if (values_.size() != n) throw std::invalid_argument("relation needs one value set per point");
  value_sets_.reserve(n);
  for (auto& v : values_) {
    if (v.empty()) throw std::invalid_argument("relation values must be nonempty");
    PointSet s = make_point_set(n, v);
    v = members_of(s);  // sorted, deduplicated
    value_sets_.push_back(std::move(s));
  }
}

FiniteRelation FiniteRelation::identity(const FiniteMetricSpace& space) {
  std::vector<std::vector<int>> v(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) v[i] = {static_cast<int>(i)};
  return FiniteRelation(space, std::move(v));
}

FiniteRelation FiniteRelation::full(const FiniteMetricSpace& space) {
  std::vector<int> all(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) all[i] = static_cast<int>(i);
  return FiniteRelation(space, std::vector<std::vector<int>>(space.size(), all));
}

FiniteRelation FiniteRelation::from_function(const FiniteMetricSpace& space, const std::vector<int>& f) {
  std::vector<std::vector<int>> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = {f[i]};
  return FiniteRelation(space, std::move(v));
}

bool FiniteRelation::is_single_valued() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.size() == 1; });
}

FiniteRelation FiniteRelation::compose_after(const FiniteRelation& inner) const { return compose(*this, inner); }

FiniteRelation FiniteRelation::power(int k) const {
  if (k < 0) throw std::invalid_argument("negative iterate");
  FiniteRelation out = identity(space_);
  for (int i = 0; i < k; ++i) out = compose(*this, out);
  return out;
}

FiniteRelation compose(const FiniteRelation& phi, const FiniteRelation& psi) {
  if (!(phi.space() == psi.space())) throw std::invalid_argument("compose: relations live on different spaces");
  const std::size_t n = phi.size();
  std::vector<std::vector<int>> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    PointSet acc(n);
    for (int y : psi.image(x)) acc |= phi.image_set(static_cast<std::size_t>(y));
    out[x] = members_of(acc);
  }
  return FiniteRelation(phi.space(), std::move(out));
}

Rational hausdorff_distance(const FiniteMetricSpace& space, const PointSet& a, const PointSet& b) {
  if (a.none() || b.none()) throw std::invalid_argument("Hausdorff distance of an empty set");
  int worst = 0;
  auto one_side = [&](const PointSet& from, const PointSet& to) {
    for (auto i = from.find_first(); i != PointSet::npos; i = from.find_next(i)) {
      int best = std::numeric_limits<int>::max();
      for (auto j = to.find_first(); j != PointSet::npos; j = to.find_next(j)) best = std::min<int>(best, space.rank(i, j));
      worst = std::max(worst, best);
    }
  };
  one_side(a, b);
  one_side(b, a);
  return space.levels()[static_cast<std::size_t>(worst)];
}

Hyperspace hyperspace_lift(const FiniteRelation& phi, std::size_t cap) {
  const std::size_t n = phi.size();
  if (n > cap) {
    throw CapExceeded("hyperspace of " + std::to_string(n) + " points exceeds cap " + std::to_string(cap));
  }
  if (n > 16) throw CapExceeded("hyperspace supports at most 16 base points");
  const std::uint32_t full = (1u << n) - 1;
  const std::size_t states = full;
  const auto& base = phi.space();

  // min_rank[a][B] = min over b in B of rank(a, b).
  std::vector<std::vector<int>> min_rank(n, std::vector<int>(full + 1, std::numeric_limits<int>::max()));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::uint32_t m = 1; m <= full; ++m) {
      int low = __builtin_ctz(m);
      int rest = min_rank[a][m & (m - 1)];
      min_rank[a][m] = std::min(rest, static_cast<int>(base.rank(a, static_cast<std::size_t>(low))));
    }
  }
  std::vector<FiniteMetricSpace::Rank> ranks(states * states, 0);
  for (std::uint32_t A = 1; A <= full; ++A) {
    for (std::uint32_t B = A + 1; B <= full; ++B) {
      int h = 0;
      for (std::uint32_t m = A; m; m &= m - 1) h = std::max(h, min_rank[static_cast<std::size_t>(__builtin_ctz(m))][B]);
      for (std::uint32_t m = B; m; m &= m - 1) h = std::max(h, min_rank[static_cast<std::size_t>(__builtin_ctz(m))][A]);
      auto r = static_cast<FiniteMetricSpace::Rank>(h);
      ranks[(A - 1) * states + (B - 1)] = r;
      ranks[(B - 1) * states + (A - 1)] = r;
    }
  }
  // Hausdorff distances take values among the base distances; distinct
  // subsets are at positive distance, so rank 0 only occurs on the diagonal.
  auto space = FiniteMetricSpace::from_ranks(states, base.levels(), std::move(ranks));

  std::vector<std::uint32_t> image_mask(n);
  for (std::size_t x = 0; x < n; ++x)
    for (int y : phi.image(x)) image_mask[x] |= 1u << y;
  std::vector<int> f(states);
  for (std::uint32_t A = 1; A <= full; ++A) {
    std::uint32_t img = 0;
    for (std::uint32_t m = A; m; m &= m - 1) img |= image_mask[static_cast<std::size_t>(__builtin_ctz(m))];
    f[A - 1] = static_cast<int>(img - 1);
  }
  return Hyperspace{FiniteRelation::from_function(space, f), n};
}

}  // namespace mventropy
