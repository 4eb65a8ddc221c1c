#pragma once

#include <boost/dynamic_bitset.hpp>

#include <string>
#include <vector>

namespace mventropy {

/// Subset of a finite carrier {0, ..., n-1}.
using PointSet = boost::dynamic_bitset<>;

PointSet make_point_set(std::size_t n, const std::vector<int>& members);
PointSet full_point_set(std::size_t n);
std::vector<int> members_of(const PointSet& s);

/// "{0,2,5}".
std::string to_string(const PointSet& s);

inline PointSet set_union(const PointSet& a, const PointSet& b) { return a | b; }
inline PointSet set_intersect(const PointSet& a, const PointSet& b) { return a & b; }
inline PointSet set_difference(const PointSet& a, const PointSet& b) { return a - b; }
inline PointSet set_complement(const PointSet& a) { return ~a; }
inline bool is_empty_set(const PointSet& a) { return a.none(); }

}  // namespace mventropy
