#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mventropy/cover_entropy.hpp"
#include "mventropy/finite_carrier.hpp"
#include "mventropy/measure.hpp"
#include "mventropy/partition.hpp"

// Seeded generators shared by the property suites, tests and benchmarks.

namespace mventropy {

using Rng = std::mt19937_64;

/// n distinct points of {0, 1/16, ..., 1} on a line.
FiniteMetricSpace random_line_space(Rng& rng, std::size_t n);

/// Each point gets between min_degree and max_degree distinct images.
FiniteRelation random_relation(Rng& rng, const FiniteMetricSpace& space, std::size_t min_degree,
                               std::size_t max_degree);

/// Integer weights in [0, max_weight], not all zero.
std::vector<std::int64_t> random_weights(Rng& rng, std::size_t n, std::int64_t max_weight = 9);
FiniteMeasure random_measure(Rng& rng, std::size_t n, std::int64_t max_weight = 9);

/// Random assignment of points to at most `max_blocks` blocks; empty blocks dropped.
OrderedPartition<PointSet> random_partition(Rng& rng, std::size_t n, std::size_t max_blocks);

/// `members` random nonempty subsets, patched so that every point is covered.
Cover<PointSet> random_cover(Rng& rng, std::size_t n, std::size_t members);

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);  // inclusive

}  // namespace mventropy
