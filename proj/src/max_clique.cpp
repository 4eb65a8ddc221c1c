#include "mventropy/max_clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace mventropy {

std::vector<PointSet> complement_graph(const std::vector<PointSet>& adjacency) {
  std::vector<PointSet> out;
  out.reserve(adjacency.size());
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    PointSet row = ~adjacency[v];
    row.reset(v);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::size_t> greedy_clique(const std::vector<PointSet>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::size_t> clique;
  if (n == 0) return clique;
  PointSet cand(n);
  cand.set();
  while (cand.any()) {
    std::size_t best = PointSet::npos, best_deg = 0;
    for (auto v = cand.find_first(); v != PointSet::npos; v = cand.find_next(v)) {
      std::size_t deg = (adjacency[v] & cand).count();
      if (best == PointSet::npos || deg > best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    clique.push_back(best);
    cand &= adjacency[best];
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

namespace {

// MCQ-style search on flat word bitsets. Vertices are relabelled by
// decreasing degree so that sequential colouring gives tight bounds, and
// every depth owns preallocated buffers.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<PointSet>& adj, std::size_t node_limit)
      : n_(adj.size()), words_((n_ + 63) / 64), node_limit_(node_limit) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<std::size_t> deg(n_);
    for (std::size_t v = 0; v < n_; ++v) deg[v] = adj[v].count();
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
    std::vector<std::size_t> pos(n_);
    for (std::size_t i = 0; i < n_; ++i) pos[order_[i]] = i;
    adj_.assign(n_ * words_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& row = adj[order_[i]];
      for (auto u = row.find_first(); u != PointSet::npos; u = row.find_next(u)) set_bit(&adj_[i * words_], pos[u]);
    }
  }

  void run(const std::vector<std::size_t>& warm) {
    best_.clear();
    best_size_ = warm.size();
    warm_ = warm;
    grow(0);
    std::uint64_t* cand = level(0).cand.data();
    for (std::size_t v = 0; v < n_; ++v) set_bit(cand, v);
    expand(0, n_);
  }

  std::vector<std::size_t> best() const {
    if (best_.empty()) return warm_;
    std::vector<std::size_t> out;
    for (std::size_t v : best_) out.push_back(order_[v]);
    return out;
  }
  bool complete() const { return nodes_ <= node_limit_; }

 private:
  struct Level {
    std::vector<std::uint64_t> cand, work;
    std::vector<std::size_t> verts, colours;
  };

  static void set_bit(std::uint64_t* w, std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static void clear_bit(std::uint64_t* w, std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  Level& level(std::size_t d) { return levels_[d]; }
  void grow(std::size_t d) {
    while (levels_.size() <= d) {
      Level l;
      l.cand.assign(words_, 0);
      l.work.assign(words_, 0);
      l.verts.reserve(n_);
      l.colours.reserve(n_);
      levels_.push_back(std::move(l));
    }
  }

  // Sequential greedy colouring of the candidates. Only vertices whose
  // colour can still beat the incumbent are listed.
  void colour(Level& L, std::size_t count) {
    L.verts.clear();
    L.colours.clear();
    std::copy(L.cand.begin(), L.cand.end(), L.work.begin());
    const std::size_t need = best_size_ + 1 > current_.size() ? best_size_ + 1 - current_.size() : 0;
    std::vector<std::uint64_t>& q = scratch_;
    q.resize(words_);
    std::size_t k = 0, left = count;
    while (left > 0) {
      ++k;
      std::copy(L.work.begin(), L.work.end(), q.begin());
      for (std::size_t w = 0; w < words_; ++w) {
        while (q[w]) {
          const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(q[w]));
          q[w] &= q[w] - 1;
          const std::uint64_t* row = &adj_[v * words_];
          for (std::size_t x = w; x < words_; ++x) q[x] &= ~row[x];
          clear_bit(L.work.data(), v);
          --left;
          if (k >= need) {
            L.verts.push_back(v);
            L.colours.push_back(k);
          }
        }
      }
    }
  }

  void expand(std::size_t d, std::size_t count) {
    if (++nodes_ > node_limit_) return;
    grow(d + 1);
    colour(level(d), count);
    for (std::size_t i = level(d).verts.size(); i-- > 0;) {
      Level& L = level(d);
      if (current_.size() + L.colours[i] <= best_size_) return;
      const std::size_t v = L.verts[i];
      current_.push_back(v);
      Level& next = level(d + 1);
      const std::uint64_t* row = &adj_[v * words_];
      std::size_t c = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        next.cand[w] = L.cand[w] & row[w];
        c += static_cast<std::size_t>(std::popcount(next.cand[w]));
      }
      if (c == 0) {
        if (current_.size() > best_size_) {
          best_ = current_;
          best_size_ = best_.size();
        }
      } else {
        expand(d + 1, c);
      }
      current_.pop_back();
      clear_bit(level(d).cand.data(), v);
      if (nodes_ > node_limit_) return;
    }
  }

  std::size_t n_, words_;
  std::size_t node_limit_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> adj_;
  std::vector<Level> levels_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::size_t> current_, best_, warm_;
  std::size_t best_size_ = 0;
};

}  // namespace

CliqueResult max_clique(const std::vector<PointSet>& adjacency, const CliqueOptions& options) {
  const std::size_t n = adjacency.size();
  for (const auto& row : adjacency)
    if (row.size() != n) throw std::invalid_argument("adjacency rows must have one bit per vertex");
  CliqueResult out;
  if (n == 0) return out;

  std::vector<std::size_t> warm = greedy_clique(adjacency);
  if (n > options.exact_threshold) {
    out.vertices = warm;
    out.exact = false;
    // Colouring bound of the whole graph.
    std::size_t colours = 0;
    PointSet cand(n);
    cand.set();
    while (cand.any()) {
      ++colours;
      PointSet q = cand;
      while (q.any()) {
        std::size_t v = q.find_first();
        q -= adjacency[v];
        q.reset(v);
        cand.reset(v);
      }
    }
    out.upper_bound = colours;
    out.exact = colours == warm.size();
    return out;
  }

  CliqueSearch search(adjacency, options.node_limit);
  search.run(warm);
  out.vertices = search.best();
  std::sort(out.vertices.begin(), out.vertices.end());
  out.exact = search.complete();
  out.upper_bound = out.exact ? out.vertices.size() : n;
  return out;
}

}  // namespace mventropy
