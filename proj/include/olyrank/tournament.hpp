#ifndef OLYRANK_TOURNAMENT_HPP
#define OLYRANK_TOURNAMENT_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "olyrank/csv.hpp"
#include "olyrank/errors.hpp"

namespace olyrank {

/// Points scored by one team in a four-board match: 0, 0.5, ..., 4.
/// Stored as a count of half points so comparisons stay exact.
class GamePoints {
public:
  static constexpr int kMaxHalfPoints = 8;

  constexpr GamePoints() = default;

  static constexpr GamePoints from_half_points(int half) {
    if (half < 0 || half > kMaxHalfPoints) throw ValidationError("game points outside [0, 4]");
    GamePoints g;
    g.half_ = half;
    return g;
  }

  /// Throws when `value` is not on the 0.5 grid or lies outside [0, 4].
  static GamePoints from_double(double value) {
    const double twice = value * 2.0;
    if (!std::isfinite(value) || twice != std::round(twice))
      throw ValidationError("game points not on the half-point grid");
    return from_half_points(static_cast<int>(twice));
  }

  constexpr int half_points() const noexcept { return half_; }
  constexpr double value() const noexcept { return half_ / 2.0; }
  constexpr GamePoints opponent() const noexcept { return from_half_points(kMaxHalfPoints - half_); }

  /// 2 for a win (>= 2.5), 1 for a 2:2 draw, 0 for a loss (<= 1.5).
  constexpr int match_points() const noexcept { return half_ > 4 ? 2 : (half_ == 4 ? 1 : 0); }

  friend constexpr auto operator<=>(GamePoints, GamePoints) = default;

private:
  int half_ = 0;
};

inline std::string to_string(GamePoints g) {
  return g.half_points() % 2 ? std::to_string(g.half_points() / 2) + ".5"
                             : std::to_string(g.half_points() / 2) + ".0";
}

struct Team {
  std::string id;
  std::string name;
  std::optional<int> start_rank;

  friend bool operator==(const Team&, const Team&) = default;
};

struct MatchRecord {
  int round = 0;
  std::string team_a;
  std::string team_b;
  GamePoints game_points_a;

  GamePoints game_points_b() const noexcept { return game_points_a.opponent(); }

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

/// Validated tournament: roster, number of rounds and the played matches.
/// Team order is the roster order and defines the alternative indices used downstream.
class Tournament {
public:
  Tournament() = default;

  Tournament(std::vector<Team> teams, int rounds, std::vector<MatchRecord> matches)
      : teams_(std::move(teams)), rounds_(rounds), matches_(std::move(matches)) {
    validate();
  }

  const std::vector<Team>& teams() const noexcept { return teams_; }
  const std::vector<MatchRecord>& matches() const noexcept { return matches_; }
  int rounds() const noexcept { return rounds_; }
  std::size_t size() const noexcept { return teams_.size(); }

  std::optional<std::size_t> index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw ValidationError("unknown team '" + std::string(id) + "'");
  }

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.teams_ == b.teams_ && a.rounds_ == b.rounds_ && a.matches_ == b.matches_;
  }

private:
  void validate() {
    if (rounds_ < 0) throw ValidationError("negative number of rounds");
    index_.clear();
    for (std::size_t i = 0; i < teams_.size(); ++i) {
      if (teams_[i].id.empty()) throw ValidationError("empty team id");
      if (!index_.emplace(teams_[i].id, i).second)
        throw ValidationError("duplicate team id '" + teams_[i].id + "'");
    }
    if (!teams_.empty() &&
        std::all_of(teams_.begin(), teams_.end(), [](const Team& t) { return t.start_rank.has_value(); })) {
      std::vector<bool> seen(teams_.size() + 1, false);
      for (const auto& t : teams_) {
        const int r = *t.start_rank;
        if (r < 1 || r > static_cast<int>(teams_.size()) || seen[r])
          throw ValidationError("start ranks are not a permutation of 1..n");
        seen[r] = true;
      }
    }
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    std::set<std::pair<int, std::size_t>> slots;
    for (const auto& m : matches_) {
      if (m.round < 1 || m.round > rounds_)
        throw ValidationError("match round " + std::to_string(m.round) + " outside 1.." + std::to_string(rounds_));
      const std::size_t a = at(m.team_a);
      const std::size_t b = at(m.team_b);
      if (a == b) throw ValidationError("team '" + m.team_a + "' plays itself");
      if (!pairs.emplace(std::min(a, b), std::max(a, b)).second)
        throw ValidationError("pair " + m.team_a + "/" + m.team_b + " appears twice");
      if (!slots.emplace(m.round, a).second || !slots.emplace(m.round, b).second)
        throw ValidationError("team plays twice in round " + std::to_string(m.round));
    }
  }

  std::vector<Team> teams_;
  int rounds_ = 0;
  std::vector<MatchRecord> matches_;
  std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

inline int parse_int(std::string_view s, std::size_t line, const char* field) {
  s = csv::trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, std::string("malformed ") + field + " '" + std::string(s) + "'");
  return v;
}

inline GamePoints parse_game_points(std::string_view s, std::size_t line) {
  s = csv::trim(s);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, "malformed game points '" + std::string(s) + "'");
  if (v < 0 || v > 4 || v * 2 != std::round(v * 2))
    throw ParseError(line, "game points '" + std::string(s) + "' off the 0..4 half-point grid");
  return GamePoints::from_half_points(static_cast<int>(v * 2));
}

inline void expect_header(std::istream& in, std::string_view expected, const char* what) {
  std::string line;
  if (!csv::read_line(in, line, true)) throw ParseError(1, std::string("empty ") + what);
  if (csv::trim(line) != expected)
    throw ParseError(1, std::string("bad ") + what + " header, expected '" + std::string(expected) + "'");
}

}  // namespace detail

/// Reads a roster CSV `id,name,start_rank` (start_rank may be empty).
inline std::vector<Team> parse_roster(std::istream& in) {
  detail::expect_header(in, "id,name,start_rank", "roster");
  std::vector<Team> teams;
  std::set<std::string> ids;
  std::string line;
  for (std::size_t lineno = 2; csv::read_line(in, line, false); ++lineno) {
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != 3) throw ParseError(lineno, "expected 3 fields, got " + std::to_string(f.size()));
    Team t{std::string(csv::trim(f[0])), std::string(csv::trim(f[1])), std::nullopt};
    if (t.id.empty()) throw ParseError(lineno, "empty team id");
    if (!ids.insert(t.id).second) throw ParseError(lineno, "duplicate team id '" + t.id + "'");
    if (!csv::trim(f[2]).empty()) t.start_rank = detail::parse_int(f[2], lineno, "start_rank");
    teams.push_back(std::move(t));
  }
  return teams;
}

/// Reads a results CSV `round,team_a,team_b,game_points_a`.
/// Without a roster, teams are inferred in order of first appearance with no start rank.
inline Tournament parse_results(std::istream& in, const std::vector<Team>* roster = nullptr) {
  detail::expect_header(in, "round,team_a,team_b,game_points_a", "results");
  std::vector<Team> teams;
  std::unordered_map<std::string, std::size_t> index;
  if (roster) {
    teams = *roster;
    for (std::size_t i = 0; i < teams.size(); ++i) index.emplace(teams[i].id, i);
  }
  auto resolve = [&](const std::string& id, std::size_t lineno) {
    if (id.empty()) throw ParseError(lineno, "empty team id");
    if (auto it = index.find(id); it != index.end()) return it->second;
    if (roster) throw ParseError(lineno, "unknown team '" + id + "'");
    teams.push_back(Team{id, id, std::nullopt});
    index.emplace(id, teams.size() - 1);
    return teams.size() - 1;
  };

  std::vector<MatchRecord> matches;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::set<std::pair<int, std::size_t>> slots;
  int rounds = 0;
  std::string line;
  for (std::size_t lineno = 2; csv::read_line(in, line, false); ++lineno) {
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != 4) throw ParseError(lineno, "expected 4 fields, got " + std::to_string(f.size()));
    MatchRecord m;
    m.round = detail::parse_int(f[0], lineno, "round");
    if (m.round < 1) throw ParseError(lineno, "round must be positive");
    m.team_a = std::string(csv::trim(f[1]));
    m.team_b = std::string(csv::trim(f[2]));
    if (m.team_a == m.team_b) throw ParseError(lineno, "team '" + m.team_a + "' listed on both sides of a match");
    m.game_points_a = detail::parse_game_points(f[3], lineno);
    const std::size_t a = resolve(m.team_a, lineno);
    const std::size_t b = resolve(m.team_b, lineno);
    if (!pairs.emplace(std::min(a, b), std::max(a, b)).second)
      throw ParseError(lineno, "duplicate pair " + m.team_a + "/" + m.team_b);
    if (!slots.emplace(m.round, a).second)
      throw ParseError(lineno, "team '" + m.team_a + "' already played in round " + std::to_string(m.round));
    if (!slots.emplace(m.round, b).second)
      throw ParseError(lineno, "team '" + m.team_b + "' already played in round " + std::to_string(m.round));
    rounds = std::max(rounds, m.round);
    matches.push_back(std::move(m));
  }
  return Tournament(std::move(teams), rounds, std::move(matches));
}

inline void write_results(const Tournament& t, std::ostream& out) {
  out << "round,team_a,team_b,game_points_a\n";
  for (const auto& m : t.matches())
    out << m.round << ',' << csv::escape(m.team_a) << ',' << csv::escape(m.team_b) << ','
        << to_string(m.game_points_a) << '\n';
}

inline void write_roster(const Tournament& t, std::ostream& out) {
  out << "id,name,start_rank\n";
  for (const auto& team : t.teams()) {
    out << csv::escape(team.id) << ',' << csv::escape(team.name) << ',';
    if (team.start_rank) out << *team.start_rank;
    out << '\n';
  }
}

/// Tie-break quantities of one team.
struct TeamScore {
  int match_points = 0;          // TB1
  double sonneborn_berger = 0;   // TB2
  double game_points = 0;        // TB3
  int buchholz = 0;              // TB4
  int wins = 0;
  int draws = 0;
  int losses = 0;
  double mix_factor = 1;         // (3 wins + 2 draws + losses) / matches

  int matches() const noexcept { return wins + draws + losses; }
};

/// Per-team scores, aligned with the tournament's team order.
struct ScoreTable {
  std::vector<Team> teams;
  std::vector<TeamScore> rows;
  /// Teams that played fewer matches than the most active team.
  std::vector<std::string> short_schedule;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Scores every team. Of the opponents tied at the lowest match points exactly one is
/// dropped from TB2 and TB4: the one with the smallest contribution, then the lowest id.
inline ScoreTable compute_score_table(const Tournament& t) {
  const std::size_t n = t.size();
  ScoreTable table;
  table.teams = t.teams();
  table.rows.assign(n, TeamScore{});

  struct Played {
    std::size_t opponent;
    GamePoints scored;
  };
  std::vector<std::vector<Played>> games(n);
  std::vector<int> half_points(n, 0);
  for (const auto& m : t.matches()) {
    const std::size_t a = t.at(m.team_a);
    const std::size_t b = t.at(m.team_b);
    games[a].push_back({b, m.game_points_a});
    games[b].push_back({a, m.game_points_b()});
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = table.rows[i];
    for (const auto& g : games[i]) {
      row.match_points += g.scored.match_points();
      half_points[i] += g.scored.half_points();
      switch (g.scored.match_points()) {
        case 2: ++row.wins; break;
        case 1: ++row.draws; break;
        default: ++row.losses; break;
      }
    }
    row.game_points = half_points[i] / 2.0;
    if (row.matches() > 0)
      row.mix_factor = static_cast<double>(3 * row.wins + 2 * row.draws + row.losses) / row.matches();
  }

  const auto& teams = t.teams();
  std::size_t most_matches = 0;
  for (std::size_t i = 0; i < n; ++i) most_matches = std::max(most_matches, games[i].size());
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = table.rows[i];
    if (games[i].size() < most_matches) table.short_schedule.push_back(teams[i].id);
    if (games[i].empty()) continue;

    // Contributions in half points keep the TB2 sum exact.
    auto sb_term = [&](const Played& p) { return table.rows[p.opponent].match_points * p.scored.half_points(); };
    auto mp = [&](const Played& p) { return table.rows[p.opponent].match_points; };
    auto drop = [&](auto&& term) {
      const Played* worst = &games[i].front();
      for (const auto& p : games[i]) {
        const auto key = std::make_tuple(mp(p), term(p));
        const auto best = std::make_tuple(mp(*worst), term(*worst));
        if (key < best || (key == best && teams[p.opponent].id < teams[worst->opponent].id)) worst = &p;
      }
      return worst;
    };
    const Played* sb_dropped = drop(sb_term);
    const Played* bh_dropped = drop(mp);
    int sb_half = 0;
    for (const auto& p : games[i]) {
      if (&p != sb_dropped) sb_half += sb_term(p);
      if (&p != bh_dropped) row.buchholz += mp(p);
    }
    row.sonneborn_berger = sb_half / 2.0;
  }
  return table;
}

/// Matches counted by the winner's game points; draws land in the 2.0 bin.
struct ResultHistogram {
  static constexpr std::array<double, 5> kBins{2.0, 2.5, 3.0, 3.5, 4.0};
  std::array<std::size_t, 5> counts{};

  std::size_t count(GamePoints winner) const { return counts.at(winner.half_points() - 4); }
  std::size_t decisive() const noexcept { return counts[1] + counts[2] + counts[3] + counts[4]; }
  std::size_t total() const noexcept { return counts[0] + decisive(); }
};

inline ResultHistogram result_distribution(const Tournament& t) {
  ResultHistogram h;
  for (const auto& m : t.matches()) {
    const GamePoints winner = std::max(m.game_points_a, m.game_points_b());
    ++h.counts[winner.half_points() - 4];
  }
  return h;
}

}  // namespace olyrank

#endif  // OLYRANK_TOURNAMENT_HPP
