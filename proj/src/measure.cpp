#include "mventropy/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace mventropy {

FiniteMeasure::FiniteMeasure(std::vector<Rational> weights) : weights_(std::move(weights)) {
  Rational total(0);
  for (auto& w : weights_) {
    w.canonicalize();
    if (w < 0) throw std::invalid_argument("negative point weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("point weights sum to " + to_string(total) + ", not 1");
}

FiniteMeasure FiniteMeasure::uniform(std::size_t n) {
  Rational w(1, static_cast<unsigned long>(n));
  w.canonicalize();
  return FiniteMeasure(std::vector<Rational>(n, w));
}

FiniteMeasure FiniteMeasure::point_mass(std::size_t n, std::size_t at) {
  std::vector<Rational> w(n, Rational(0));
  w.at(at) = 1;
  return FiniteMeasure(std::move(w));
}

FiniteMeasure FiniteMeasure::from_counts(const std::vector<long>& counts) {
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    total += c;
  }
  if (total == 0) throw std::invalid_argument("all counts are zero");
  std::vector<Rational> w;
  w.reserve(counts.size());
  for (long c : counts) {
    Rational r(c, total);
    r.canonicalize();
    w.push_back(r);
  }
  return FiniteMeasure(std::move(w));
}

Rational FiniteMeasure::measure(const PointSet& s) const {
  if (s.size() != weights_.size()) throw std::invalid_argument("measure and set live on different carriers");
  Rational total(0);
  for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) total += weights_[i];
  return total;
}

IntervalMeasure::IntervalMeasure(std::vector<DensityPiece> density, std::vector<Atom> atoms)
    : density_(std::move(density)), atoms_(std::move(atoms)) {
  std::sort(density_.begin(), density_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  Rational total(0);
  for (std::size_t i = 0; i < density_.size(); ++i) {
    const auto& p = density_[i];
    if (p.lo < 0 || p.hi > 1 || p.lo >= p.hi) throw std::invalid_argument("bad density piece");
    if (p.density < 0) throw std::invalid_argument("negative density");
    if (i && density_[i - 1].hi > p.lo) throw std::invalid_argument("overlapping density pieces");
    total += p.density * (p.hi - p.lo);
  }
  for (const auto& a : atoms_) {
    if (a.at < 0 || a.at > 1 || a.mass < 0) throw std::invalid_argument("bad atom");
    total += a.mass;
  }
  if (total != 1) throw std::invalid_argument("interval measure has total mass " + to_string(total));
}

IntervalMeasure IntervalMeasure::lebesgue() { return IntervalMeasure({{Rational(0), Rational(1), Rational(1)}}, {}); }

Rational IntervalMeasure::measure(const IntervalSet& s) const {
  Rational total(0);
  for (const auto& p : density_) {
    if (p.density == 0) continue;
    total += p.density * (s & IntervalSet::open(p.lo, p.hi)).lebesgue();
  }
  for (const auto& a : atoms_)
    if (s.contains(a.at)) total += a.mass;
  return total;
}

}  // namespace mventropy
