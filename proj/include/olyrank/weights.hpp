#ifndef OLYRANK_WEIGHTS_HPP
#define OLYRANK_WEIGHTS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "olyrank/errors.hpp"

namespace olyrank {

/// Positive priority vector normalized to sum 1, tagged with how it was produced.
struct WeightVector {
  std::vector<double> w;
  std::string method;
  std::string scale;

  std::size_t size() const noexcept { return w.size(); }
  double operator[](std::size_t i) const { return w[i]; }
};

/// exp(y_i) normalized to sum 1, shifted by max(y) so large logs do not overflow.
inline std::vector<double> normalized_exp(std::span<const double> log_weights) {
  if (log_weights.empty()) return {};
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> w(log_weights.size());
  std::transform(log_weights.begin(), log_weights.end(), w.begin(), [&](double y) { return std::exp(y - top); });
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= sum;
  return w;
}

inline std::vector<double> normalized(std::vector<double> w) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(sum > 0)) throw DegenerateInputError("cannot normalize a non-positive vector");
  for (auto& v : w) v /= sum;
  return w;
}

}  // namespace olyrank

#endif  // OLYRANK_WEIGHTS_HPP
