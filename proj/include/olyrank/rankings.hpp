#ifndef OLYRANK_RANKINGS_HPP
#define OLYRANK_RANKINGS_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include "olyrank/errors.hpp"
#include "olyrank/tournament.hpp"
#include "olyrank/weights.hpp"

namespace olyrank {

/// Tie-free ranking. `position[k]` is the 1-based rank of `team_ids[k]`; entries keep the
/// order of the source (roster) rather than rank order.
struct Ranking {
  std::string label;
  std::vector<std::string> team_ids;
  std::vector<std::string> team_names;
  std::vector<int> position;
  std::vector<double> primary_key;  // the value the ranking sorts on first
  int id_tie_breaks = 0;            // adjacent pairs separated only by team id

  std::size_t size() const noexcept { return position.size(); }
  bool tie_broken_by_id() const noexcept { return id_tie_breaks > 0; }

  /// Team indices ordered from rank 1 downwards.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> idx(size());
    for (std::size_t k = 0; k < size(); ++k) idx[position[k] - 1] = k;
    return idx;
  }
};

/// Throws unless positions are a permutation of 1..n.
inline void check_permutation(const Ranking& r) {
  std::vector<bool> seen(r.size() + 1, false);
  for (int p : r.position) {
    if (p < 1 || p > static_cast<int>(r.size()) || seen[p])
      throw ValidationError("ranking '" + r.label + "' is not a permutation");
    seen[p] = true;
  }
}

namespace detail {

/// Sorts teams by `keys` descending (lexicographic over the array), then by team id.
template <std::size_t K>
Ranking rank_by_keys(std::string label, const std::vector<Team>& teams, const std::vector<std::array<double, K>>& keys) {
  Ranking r;
  r.label = std::move(label);
  const std::size_t n = teams.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return teams[a].id < teams[b].id;
  });
  r.position.assign(n, 0);
  r.primary_key.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    r.team_ids.push_back(teams[k].id);
    r.team_names.push_back(teams[k].name);
    r.primary_key[k] = keys[k][0];
    r.position[idx[k]] = static_cast<int>(k + 1);
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (keys[idx[k]] == keys[idx[k + 1]]) ++r.id_tie_breaks;
  return r;
}

}  // namespace detail

/// Descending weight order; exact ties fall back to team id and are counted.
inline Ranking ranking_from_weights(const WeightVector& w, const std::vector<Team>& teams, std::string label) {
  if (w.size() != teams.size()) throw ValidationError("weight vector and roster differ in size");
  std::vector<std::array<double, 1>> keys(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) keys[k] = {w[k]};
  return detail::rank_by_keys(std::move(label), teams, keys);
}

/// Label such as "A-LLSM" or "C-EM".
inline std::string weight_label(const WeightVector& w) {
  std::string method = w.method;
  std::transform(method.begin(), method.end(), method.begin(), [](unsigned char c) { return std::toupper(c); });
  return w.scale.empty() ? method : w.scale + "-" + method;
}

inline Ranking ranking_from_weights(const WeightVector& w, const std::vector<Team>& teams) {
  return ranking_from_weights(w, teams, weight_label(w));
}

/// TB1, TB2, TB3, TB4, all descending.
inline Ranking official_final_ranking(const ScoreTable& s) {
  std::vector<std::array<double, 4>> keys;
  for (const auto& r : s.rows)
    keys.push_back({double(r.match_points), r.sonneborn_berger, r.game_points, double(r.buchholz)});
  return detail::rank_by_keys("Final", s.teams, keys);
}

/// TB2, then TB1, then TB3.
inline Ranking sonneborn_berger_ranking(const ScoreTable& s) {
  std::vector<std::array<double, 3>> keys;
  for (const auto& r : s.rows) keys.push_back({r.sonneborn_berger, double(r.match_points), r.game_points});
  return detail::rank_by_keys("Sonneborn-Berger", s.teams, keys);
}

/// TB4 * TB1 / matches; zero for a team without matches.
inline double buchholz_score(const TeamScore& r) {
  return r.matches() ? static_cast<double>(r.buchholz * r.match_points) / r.matches() : 0.0;
}

/// TB2 + F * TB4. Evaluated as one division of exact integers so that equal scores
/// compare equal.
inline double mix_score(const TeamScore& r) {
  if (r.matches() == 0) return r.sonneborn_berger;
  const long long m = r.matches();
  const long long twice_sb = static_cast<long long>(r.sonneborn_berger * 2);
  const long long weighted = 3LL * r.wins + 2LL * r.draws + r.losses;
  return static_cast<double>(twice_sb * m + 2 * weighted * r.buchholz) / static_cast<double>(2 * m);
}

/// Buchholz score, then TB1, then TB2.
inline Ranking buchholz_ranking(const ScoreTable& s) {
  std::vector<std::array<double, 3>> keys;
  for (const auto& r : s.rows) keys.push_back({buchholz_score(r), double(r.match_points), r.sonneborn_berger});
  return detail::rank_by_keys("Buchholz", s.teams, keys);
}

/// Mix score, then TB2.
inline Ranking mix_ranking(const ScoreTable& s) {
  std::vector<std::array<double, 2>> keys;
  for (const auto& r : s.rows) keys.push_back({mix_score(r), r.sonneborn_berger});
  return detail::rank_by_keys("Mix", s.teams, keys);
}

/// Pre-tournament seeding taken from the roster's start ranks.
inline Ranking start_ranking(const std::vector<Team>& teams) {
  Ranking r;
  r.label = "Start";
  for (const auto& t : teams) {
    if (!t.start_rank) throw ValidationError("team '" + t.id + "' has no start rank");
    r.team_ids.push_back(t.id);
    r.team_names.push_back(t.name);
    r.position.push_back(*t.start_rank);
    r.primary_key.push_back(*t.start_rank);
  }
  check_permutation(r);
  return r;
}

}  // namespace olyrank

#endif  // OLYRANK_RANKINGS_HPP
