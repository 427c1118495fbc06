#ifndef OLYRANK_TEST_SUPPORT_HPP
#define OLYRANK_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "olyrank/pcm.hpp"
#include "olyrank/rankings.hpp"
#include "olyrank/tournament.hpp"

namespace olyrank::fixtures {

inline std::string team_name(std::size_t i) {
  std::ostringstream s;
  s << 'T' << (i < 10 ? "0" : "") << i;
  return s.str();
}

/// Random Swiss-like tournament: each round pairs the teams at random, never repeating
/// a pair; with an odd count one team sits out.
inline Tournament random_tournament(std::mt19937& rng, std::size_t n, int rounds) {
  std::vector<Team> teams;
  for (std::size_t i = 0; i < n; ++i) teams.push_back({team_name(i), "Team " + std::to_string(i), std::nullopt});
  std::set<std::pair<std::size_t, std::size_t>> played;
  std::vector<MatchRecord> matches;
  std::uniform_int_distribution<int> score(0, GamePoints::kMaxHalfPoints);
  for (int r = 1; r <= rounds; ++r) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> busy(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (busy[order[a]]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto i = order[a], j = order[b];
        if (busy[j] || played.count({std::min(i, j), std::max(i, j)})) continue;
        busy[i] = busy[j] = true;
        played.insert({std::min(i, j), std::max(i, j)});
        matches.push_back({r, teams[i].id, teams[j].id, GamePoints::from_half_points(score(rng))});
        break;
      }
    }
  }
  int last = 0;
  for (const auto& m : matches) last = std::max(last, m.round);
  return Tournament(std::move(teams), last, std::move(matches));
}

/// Swiss-like tournament where each board is decided by hidden team strengths; start
/// ranks follow the strengths. Regenerated until the comparison graph is connected.
inline Tournament synthetic_tournament(std::uint32_t seed, std::size_t n = 16, int rounds = 5) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> strength_dist(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> strength(n);
    for (auto& s : strength) s = strength_dist(rng);
    std::vector<std::size_t> by_strength(n);
    std::iota(by_strength.begin(), by_strength.end(), std::size_t{0});
    std::sort(by_strength.begin(), by_strength.end(), [&](auto a, auto b) { return strength[a] > strength[b]; });
    std::vector<Team> teams(n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto i = by_strength[r];
      teams[i] = {team_name(i), "Team " + std::to_string(i), static_cast<int>(r + 1)};
    }
    std::set<std::pair<std::size_t, std::size_t>> played;
    std::vector<MatchRecord> matches;
    std::vector<int> points(n, 0);
    for (int round = 1; round <= rounds; ++round) {
      // Pair neighbours in the current standings, skipping rematches.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return points[a] > points[b]; });
      std::vector<bool> busy(n, false);
      for (std::size_t a = 0; a < n; ++a) {
        if (busy[order[a]]) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
          const auto i = order[a], j = order[b];
          if (busy[j] || played.count({std::min(i, j), std::max(i, j)})) continue;
          busy[i] = busy[j] = true;
          played.insert({std::min(i, j), std::max(i, j)});
          const double p_win = 1.0 / (1.0 + std::exp(-(strength[i] - strength[j])));
          int half = 0;
          for (int board = 0; board < 4; ++board) {
            const double x = u(rng);
            half += x < 0.8 * p_win ? 2 : (x < 0.8 * p_win + 0.2 ? 1 : 0);
          }
          const auto g = GamePoints::from_half_points(half);
          matches.push_back({round, teams[i].id, teams[j].id, g});
          points[i] += g.match_points();
          points[j] += g.opponent().match_points();
          break;
        }
      }
    }
    Tournament t(teams, rounds, matches);
    std::vector<PcmEntry> entries;
    for (const auto& m : t.matches()) entries.push_back({t.at(m.team_a), t.at(m.team_b), 1.0});
    if (is_connected(comparison_graph(IncompletePCM(n, entries)))) return t;
  }
}

inline std::vector<double> random_weights(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> w(n);
  for (auto& v : w) v = std::exp(u(rng));
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= s;
  return w;
}

/// Random spanning tree plus `extra` additional distinct edges, as i < j pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> random_connected_edges(std::mt19937& rng, std::size_t n,
                                                                                std::size_t extra) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t parent = order[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
    edges.insert({std::min(parent, order[k]), std::max(parent, order[k])});
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  while (extra > 0 && edges.size() < max_edges) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (edges.insert({std::min(a, b), std::max(a, b)}).second) --extra;
  }
  return {edges.begin(), edges.end()};
}

/// Consistent values a_ij = w_i / w_j on the given edges.
inline IncompletePCM consistent_pcm(const std::vector<double>& w,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<PcmEntry> entries;
  for (const auto& [i, j] : edges) entries.push_back({i, j, w[i] / w[j]});
  return IncompletePCM(w.size(), std::move(entries));
}

/// Values drawn log-uniformly from [1/9, 9] on the given edges.
inline IncompletePCM random_pcm(std::mt19937& rng, std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::uniform_real_distribution<double> u(-std::log(9.0), std::log(9.0));
  std::vector<PcmEntry> entries;
  for (const auto& [i, j] : edges) entries.push_back({i, j, std::exp(u(rng))});
  return IncompletePCM(n, std::move(entries));
}

inline std::vector<int> random_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Ranking ranking_of(const std::vector<int>& positions, std::string label = "R") {
  Ranking r;
  r.label = std::move(label);
  r.position = positions;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    r.team_ids.push_back(team_name(k));
    r.team_names.push_back(team_name(k));
    r.primary_key.push_back(positions[k]);
  }
  return r;
}

/// Central finite-difference gradient of `f` at `x`.
template <typename F>
std::vector<double> numeric_gradient(F&& f, std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double x0 = x[k];
    x[k] = x0 + h;
    const double up = f(x);
    x[k] = x0 - h;
    const double down = f(x);
    x[k] = x0;
    g[k] = (up - down) / (2 * h);
  }
  return g;
}

/// Brute-force descent on the log-domain LLSM objective: steepest descent with
/// finite-difference gradients and backtracking, the last coordinate pinned at 0.
inline double descent_llsm_minimum(const IncompletePCM& m) {
  const std::size_t n = m.size();
  auto objective = [&](const std::vector<double>& y) {
    double s = 0;
    for (const auto& e : m.entries()) {
      const double r = std::log(e.value) - (y[e.i] - y[e.j]);
      s += r * r;
    }
    return s;
  };
  std::vector<double> y(n, 0.0);
  double f = objective(y);
  for (int it = 0; it < 20000; ++it) {
    auto g = numeric_gradient(objective, y, 1e-6);
    g[n - 1] = 0;
    double gnorm = 0;
    for (double v : g) gnorm += v * v;
    if (gnorm < 1e-22) break;
    double step = 1.0;
    std::vector<double> trial(n);
    while (step > 1e-16) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = y[k] - step * g[k];
      const double ft = objective(trial);
      if (ft <= f - 1e-4 * step * gnorm) {
        y = trial;
        f = ft;
        break;
      }
      step *= 0.5;
    }
    if (step <= 1e-16) break;
  }
  return f;
}

}  // namespace olyrank::fixtures

#endif  // OLYRANK_TEST_SUPPORT_HPP
