#pragma once

#include <cstddef>
#include <vector>

#include "mventropy/point_set.hpp"

namespace mventropy {

struct SetCoverOptions {
  /// Instances with more (deduplicated, undominated) sets than this are
  /// answered by greedy plus a packing lower bound.
  std::size_t exact_threshold = 2000;
  /// Branch-and-bound node budget; exceeding it downgrades to inexact.
  std::size_t node_limit = 20'000'000;
};

struct SetCoverResult {
  std::size_t size = 0;
  /// Indices into the caller's set list.
  std::vector<std::size_t> chosen;
  std::size_t lower_bound = 0;
  bool exact = true;
};

/// Minimum number of `sets` whose union is {0..universe-1}.
///
/// Branch and bound with a greedy warm start: branch on the uncovered
/// element with the fewest covering sets, prune with a packing bound
/// (uncovered elements no two of which share a covering set).
/// Throws std::invalid_argument when the sets do not cover the universe.
SetCoverResult min_set_cover(std::size_t universe, const std::vector<PointSet>& sets,
                             const SetCoverOptions& options = {});

/// Greedy cover only (largest marginal gain, lowest index on ties).
SetCoverResult greedy_set_cover(std::size_t universe, const std::vector<PointSet>& sets);

}  // namespace mventropy
