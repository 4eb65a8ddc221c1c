#include "mventropy/max_flow.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace mventropy {

MaxFlow::MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

void MaxFlow::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  if (capacity < 0) throw std::invalid_argument("negative capacity");
  adj_[from].push_back(edges_.size());
  edges_.push_back({to, capacity});
  adj_[to].push_back(edges_.size());
  edges_.push_back({from, 0});
}

bool MaxFlow::bfs(std::size_t s, std::size_t t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop();
    for (std::size_t id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(std::size_t v, std::size_t t, std::int64_t pushed) {
  if (v == t || pushed == 0) return pushed;
  for (std::size_t& i = next_[v]; i < adj_[v].size(); ++i) {
    std::size_t id = adj_[v][i];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[v] + 1) continue;
    std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(std::size_t source, std::size_t sink) {
  std::int64_t flow = 0;
  while (bfs(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (std::int64_t f = dfs(source, sink, kInfinite)) flow += f;
  }
  return flow;
}

std::vector<bool> MaxFlow::source_side(std::size_t source) const {
  std::vector<bool> seen(adj_.size(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t id : adj_[v]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace mventropy
