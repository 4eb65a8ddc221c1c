#include "mventropy/preimage.hpp"

#include <stdexcept>

namespace mventropy {

PointSet large_preimage(const FiniteRelation& phi, const PointSet& b) {
  PointSet out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x)
    if (phi.image_set(x).intersects(b)) out.set(x);
  return out;
}

PointSet small_preimage(const FiniteRelation& phi, const PointSet& b) {
  PointSet out(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x)
    if (phi.image_set(x).is_subset_of(b)) out.set(x);
  return out;
}

PointSet iterated_large_preimage(const FiniteRelation& phi, PointSet b, int k) {
  if (k < 0) throw std::invalid_argument("negative preimage depth");
  for (int i = 0; i < k; ++i) b = large_preimage(phi, b);
  return b;
}

namespace {

Cmp upper_side(const Boundary& hi) { return hi.closed ? Cmp::LessEq : Cmp::Less; }
Cmp lower_side(const Boundary& lo) { return lo.closed ? Cmp::GreaterEq : Cmp::Greater; }
Cmp inside_lower(const Boundary& lo) { return lo.closed ? Cmp::GreaterEq : Cmp::Greater; }
Cmp inside_upper(const Boundary& hi) { return hi.closed ? Cmp::LessEq : Cmp::Less; }

}  // namespace

IntervalSet large_preimage(const PLMultiMap& phi, const IntervalSet& b) {
  IntervalSet out;
  for (const auto& branch : phi.branches()) {
    for (const auto& piece : b.pieces()) {
      // [l, u] meets <a, b>  iff  l below the top of the piece and u above its bottom.
      IntervalSet hit = branch.domain & branch.lower.level_set(piece.hi.value, upper_side(piece.hi));
      if (hit.is_empty()) continue;
      hit = hit & branch.upper.level_set(piece.lo.value, lower_side(piece.lo));
      out = out | hit;
    }
  }
  return out;
}

IntervalSet small_preimage(const PLMultiMap& phi, const IntervalSet& b) {
  IntervalSet out = IntervalSet::unit();
  for (const auto& branch : phi.branches()) {
    // Points where this branch is inactive impose no constraint.
    IntervalSet ok = branch.domain.complement();
    for (const auto& piece : b.pieces()) {
      IntervalSet inside = branch.lower.level_set(piece.lo.value, inside_lower(piece.lo)) &
                           branch.upper.level_set(piece.hi.value, inside_upper(piece.hi));
      ok = ok | (branch.domain & inside);
    }
    out = out & ok;
    if (out.is_empty()) break;
  }
  return out;
}

IntervalSet iterated_large_preimage(const PLMultiMap& phi, IntervalSet b, int k) {
  if (k < 0) throw std::invalid_argument("negative preimage depth");
  for (int i = 0; i < k; ++i) b = large_preimage(phi, b);
  return b;
}

}  // namespace mventropy
