#pragma once

#include <string>
#include <utility>
#include <vector>

namespace mventropy {

/// Desk-scale stand-in for a limsup of (1/n)·total_n.
///
/// `values[n-1]` is total_n / n for n = 1..N. `reported` is the maximum of
/// the values over the tail n >= ceil(N/2). `increments[n-1]` is
/// total_n - total_{n-1}, the per-step growth of the underlying quantity;
/// for bounded counts it reaches exactly 0 once the count stabilizes, which
/// the values only approach like 1/n.
struct EntropyEstimate {
  std::vector<double> totals;
  std::vector<double> values;
  std::vector<double> increments;
  double reported = 0.0;
  bool exact = true;
  std::vector<std::pair<std::string, std::string>> params;

  std::size_t depth() const { return values.size(); }
  double value_at(std::size_t n) const { return values.at(n - 1); }
  double last_increment() const { return increments.back(); }

  static EntropyEstimate from_totals(std::vector<double> totals, bool exact = true);
};

}  // namespace mventropy
