#ifndef OLYRANK_LINE_SEARCH_HPP
#define OLYRANK_LINE_SEARCH_HPP

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>

namespace olyrank {

struct LineMinimum {
  double x = 0;
  double value = 0;
  int evaluations = 0;
};

/// Brent's minimizer (golden section with parabolic steps) for a unimodal `f` on
/// [lo, hi]. The final bracket is narrower than tol * max(1, |x|).
template <typename F>
LineMinimum brent_minimum(F&& f, double lo, double hi, double tol) {
  int evaluations = 0;
  auto counted = [&](double x) {
    ++evaluations;
    return f(x);
  };
  // Boost brackets the minimum to within 4 * 2^(1 - bits) * (|x| + 1/4).
  const int bits = static_cast<int>(std::ceil(3.0 - std::log2(tol)));
  std::uintmax_t max_iter = 1000;
  const auto [x, fx] = boost::math::tools::brent_find_minima(counted, lo, hi, bits, max_iter);
  return {x, fx, evaluations};
}

/// Minimizes over [center - half_width, center + half_width]; when the minimum sits
/// against an edge the bracket is re-centred there, up to `max_expansions` times.
template <typename F>
LineMinimum line_minimum(F&& f, double center, double half_width, double tol, int max_expansions = 16) {
  LineMinimum best;
  int evaluations = 0;
  for (int round = 0;; ++round) {
    const double lo = center - half_width;
    const double hi = center + half_width;
    best = brent_minimum(f, lo, hi, tol);
    evaluations += best.evaluations;
    const double edge = 1e-3 * half_width;
    if (round == max_expansions || (best.x - lo > edge && hi - best.x > edge)) break;
    center = best.x;
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace olyrank

#endif  // OLYRANK_LINE_SEARCH_HPP
