#pragma once

#include <cstddef>
#include <vector>

#include "mventropy/point_set.hpp"

namespace mventropy {

struct CliqueOptions {
  /// Graphs with more vertices get a greedy clique, flagged inexact.
  std::size_t exact_threshold = 2000;
  std::size_t node_limit = 20'000'000;
};

struct CliqueResult {
  std::vector<std::size_t> vertices;  // sorted
  std::size_t upper_bound = 0;
  bool exact = true;

  std::size_t size() const { return vertices.size(); }
};

/// Maximum clique of an undirected graph given as symmetric adjacency rows
/// (no self loops). Branch and bound with greedy-colouring bounds. A maximum
/// independent set of G is a maximum clique of its complement.
CliqueResult max_clique(const std::vector<PointSet>& adjacency, const CliqueOptions& options = {});

/// Greedy clique: repeatedly add the candidate with most candidate neighbours.
std::vector<std::size_t> greedy_clique(const std::vector<PointSet>& adjacency);

/// Complement graph without self loops.
std::vector<PointSet> complement_graph(const std::vector<PointSet>& adjacency);

}  // namespace mventropy
