#include "mventropy/entropy_estimate.hpp"

#include <algorithm>
#include <stdexcept>

namespace mventropy {

EntropyEstimate EntropyEstimate::from_totals(std::vector<double> totals, bool exact) {
  if (totals.empty()) throw std::invalid_argument("entropy estimate needs at least one level");
  EntropyEstimate e;
  e.exact = exact;
  const std::size_t depth = totals.size();
  for (std::size_t n = 1; n <= depth; ++n) {
    e.values.push_back(totals[n - 1] / static_cast<double>(n));
    e.increments.push_back(n == 1 ? totals[0] : totals[n - 1] - totals[n - 2]);
  }
  const std::size_t tail = (depth + 1) / 2;  // ceil(N/2)
  e.reported = *std::max_element(e.values.begin() + static_cast<long>(tail - 1), e.values.end());
  e.totals = std::move(totals);
  return e;
}

}  // namespace mventropy
