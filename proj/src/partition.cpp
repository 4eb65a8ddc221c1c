#include "mventropy/partition.hpp"

#include <algorithm>

namespace mventropy {

double phi_fn(double x) {
  if (x < 0) throw std::domain_error("phi_fn of a negative number");
  if (x == 0) return 0.0;
  return x * std::log(x);
}

double phi_fn(const Rational& x) {
  if (x < 0) throw std::domain_error("phi_fn of a negative number");
  if (x == 0 || x == 1) return 0.0;
  return phi_fn(to_double(x));
}

void MetricEntropyTable::write_csv(std::ostream& os) const {
  os << "n,card,H,H_over_n\n";
  for (std::size_t i = 0; i < cards.size(); ++i) {
    os << (i + 1) << ',' << cards[i] << ',' << entropies[i] << ',' << estimate.values[i] << '\n';
  }
}

OrderedPartition<IntervalSet> uniform_interval_partition(int m) {
  if (m < 1) throw std::invalid_argument("partition needs m >= 1");
  OrderedPartition<IntervalSet> out;
  for (int i = 0; i < m; ++i) {
    Rational lo(i, m), hi(i + 1, m);
    lo.canonicalize();
    hi.canonicalize();
    out.pieces.push_back(IntervalSet::make(lo, i == 0, hi, true));
  }
  return out;
}

OrderedPartition<PointSet> uniform_point_partition(std::size_t n, int m) {
  if (m < 1 || n == 0) throw std::invalid_argument("partition needs m >= 1 and a nonempty carrier");
  const std::size_t blocks = std::min<std::size_t>(n, static_cast<std::size_t>(m));
  OrderedPartition<PointSet> out;
  for (std::size_t b = 0; b < blocks; ++b) {
    PointSet s(n);
    for (std::size_t i = b * n / blocks; i < (b + 1) * n / blocks; ++i) s.set(i);
    out.pieces.push_back(std::move(s));
  }
  return out;
}

}  // namespace mventropy
