#ifndef OLYRANK_COMPARE_HPP
#define OLYRANK_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "olyrank/errors.hpp"
#include "olyrank/pcm.hpp"
#include "olyrank/rankings.hpp"
#include "olyrank/tournament.hpp"
#include "olyrank/weights.hpp"

namespace olyrank {

/// Positions of the same teams under two rankings, in x's team order.
struct AlignedPositions {
  std::vector<int> x;
  std::vector<int> y;
};

inline AlignedPositions align(const Ranking& x, const Ranking& y) {
  if (x.size() != y.size()) throw ValidationError("rankings '" + x.label + "' and '" + y.label + "' differ in size");
  AlignedPositions a{x.position, std::vector<int>(x.size())};
  if (x.team_ids == y.team_ids) {
    a.y = y.position;
    return a;
  }
  std::unordered_map<std::string, int> pos;
  for (std::size_t k = 0; k < y.size(); ++k) pos.emplace(y.team_ids[k], y.position[k]);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto it = pos.find(x.team_ids[k]);
    if (it == pos.end())
      throw ValidationError("team '" + x.team_ids[k] + "' missing from ranking '" + y.label + "'");
    a.y[k] = it->second;
  }
  return a;
}

/// 1 - 6 sum d^2 / (n (n^2 - 1)) over position vectors.
inline double spearman(std::span<const int> x, std::span<const int> y) {
  const auto n = static_cast<long long>(x.size());
  if (n < 2) throw DegenerateInputError("Spearman's rho needs at least two teams");
  long long sum = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const long long d = x[k] - y[k];
    sum += d * d;
  }
  return 1.0 - static_cast<double>(6 * sum) / static_cast<double>(n * (n * n - 1));
}

inline double spearman(const Ranking& x, const Ranking& y) {
  const auto a = align(x, y);
  return spearman(a.x, a.y);
}

namespace detail {

inline double log_rank_distance(std::span<const int> x, std::span<const int> y, double log_base) {
  double sum = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = std::log(static_cast<double>(x[k])) - std::log(static_cast<double>(y[k]));
    sum += d * d;
  }
  const double tau = std::sqrt(sum);
  return log_base > 0 ? tau / std::log(log_base) : tau;
}

}  // namespace detail

/// sqrt(sum (ln X_i - ln Y_i)^2).
inline double tau(std::span<const int> x, std::span<const int> y) { return detail::log_rank_distance(x, y, 0); }

inline double tau(const Ranking& x, const Ranking& y) {
  const auto a = align(x, y);
  return tau(a.x, a.y);
}

/// Largest tau between two rankings of n teams, attained by a ranking and its reversal.
inline double tau_max(std::size_t n) {
  std::vector<int> identity(n), reversal(n);
  for (std::size_t i = 0; i < n; ++i) {
    identity[i] = static_cast<int>(i + 1);
    reversal[i] = static_cast<int>(n - i);
  }
  return tau(identity, reversal);
}

/// Ordinary least-squares slope of y-positions on x-positions.
inline double regression_slope(std::span<const int> x, std::span<const int> y) {
  const std::size_t n = x.size();
  if (n < 2) throw DegenerateInputError("regression needs at least two teams");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

inline double regression_slope(const Ranking& x, const Ranking& y) {
  const auto a = align(x, y);
  return regression_slope(a.x, a.y);
}

enum class Metric { tau, spearman };

inline std::string to_string(Metric m) { return m == Metric::tau ? "tau" : "spearman"; }

/// Pairwise values between rankings: tau distances, or Spearman coefficients laid out
/// the same way (diagonal 1 instead of 0).
struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  Metric metric = Metric::tau;

  std::size_t size() const noexcept { return labels.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[i][j]; }
};

inline DistanceMatrix distance_table(const std::vector<Ranking>& rankings, Metric metric) {
  if (rankings.size() < 2) throw DegenerateInputError("a distance table needs at least two rankings");
  const std::size_t k = rankings.size();
  DistanceMatrix dm;
  dm.metric = metric;
  dm.values.assign(k, std::vector<double>(k, metric == Metric::tau ? 0.0 : 1.0));
  for (const auto& r : rankings) dm.labels.push_back(r.label);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const double v = metric == Metric::tau ? tau(rankings[i], rankings[j]) : spearman(rankings[i], rankings[j]);
      dm.values[i][j] = dm.values[j][i] = v;
    }
  return dm;
}

/// Summary of a normalized weight vector against the win ratios of its scale.
struct WeightStats {
  double max = 0;
  double min = 0;
  double max_min_ratio = 0;
  double mean = 0;
  double std_dev = 0;  // population
  double average_win_ratio = 0;
  double power = 0;
};

/// Mean ratio of a decisive match under `scale`, weighted by how often each winning
/// score occurred. Draws are excluded.
inline double average_win_ratio(const ResultHistogram& h, const RatioScale& scale) {
  if (h.decisive() == 0) throw DegenerateInputError("no decisive matches in the histogram");
  double sum = 0;
  for (int half = 5; half <= GamePoints::kMaxHalfPoints; ++half) {
    const auto g = GamePoints::from_half_points(half);
    sum += static_cast<double>(h.count(g)) * scale.value(g);
  }
  return sum / static_cast<double>(h.decisive());
}

/// How many average wins separate the strongest team from the weakest.
inline double power(double max_min_ratio, double average_win_ratio) {
  return std::log(max_min_ratio) / std::log(average_win_ratio);
}

inline WeightStats weight_stats(const WeightVector& w, const ResultHistogram& h, const RatioScale& scale) {
  if (w.size() == 0) throw DegenerateInputError("empty weight vector");
  WeightStats s;
  const auto [lo, hi] = std::minmax_element(w.w.begin(), w.w.end());
  s.max = *hi;
  s.min = *lo;
  s.max_min_ratio = s.max / s.min;
  const double n = static_cast<double>(w.size());
  s.mean = std::accumulate(w.w.begin(), w.w.end(), 0.0) / n;
  double ss = 0;
  for (double v : w.w) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = std::sqrt(ss / n);
  s.average_win_ratio = average_win_ratio(h, scale);
  s.power = power(s.max_min_ratio, s.average_win_ratio);
  return s;
}

/// Mean and median of |rank difference| between the two teams of each match.
struct AdjacencyStats {
  double mean = 0;
  double median = 0;
  std::size_t matches = 0;
};

inline AdjacencyStats adjacency_stats(const Tournament& t, const Ranking& r) {
  std::unordered_map<std::string, int> pos;
  for (std::size_t k = 0; k < r.size(); ++k) pos.emplace(r.team_ids[k], r.position[k]);
  auto rank_of = [&](const std::string& id) {
    const auto it = pos.find(id);
    if (it == pos.end()) throw ValidationError("team '" + id + "' missing from ranking '" + r.label + "'");
    return it->second;
  };
  std::vector<int> diffs;
  diffs.reserve(t.matches().size());
  for (const auto& m : t.matches()) diffs.push_back(std::abs(rank_of(m.team_a) - rank_of(m.team_b)));
  AdjacencyStats s;
  s.matches = diffs.size();
  if (diffs.empty()) return s;
  s.mean = std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(diffs.size());
  std::sort(diffs.begin(), diffs.end());
  const std::size_t mid = diffs.size() / 2;
  s.median = diffs.size() % 2 ? diffs[mid] : 0.5 * (diffs[mid - 1] + diffs[mid]);
  return s;
}

}  // namespace olyrank

#endif  // OLYRANK_COMPARE_HPP
