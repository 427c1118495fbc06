#ifndef OLYRANK_PCM_HPP
#define OLYRANK_PCM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olyrank/csv.hpp"
#include "olyrank/errors.hpp"
#include "olyrank/rational.hpp"
#include "olyrank/tournament.hpp"

namespace olyrank {

/// Maps a team's game points in a match to the ratio of its strength over the opponent's.
class RatioScale {
public:
  using Table = std::array<Rational, GamePoints::kMaxHalfPoints + 1>;

  /// Validates draw -> 1, r(g) r(4 - g) = 1 and strict monotonicity, all exactly.
  RatioScale(std::string name, const Table& ratios) : name_(std::move(name)), ratios_(ratios) {
    constexpr int top = GamePoints::kMaxHalfPoints;
    if (ratios_[top / 2] != Rational(1)) throw ValidationError("scale '" + name_ + "': a draw must map to 1");
    for (int h = 0; h <= top; ++h) {
      if (ratios_[h] <= Rational(0)) throw ValidationError("scale '" + name_ + "': ratios must be positive");
      if (ratios_[h] * ratios_[top - h] != Rational(1))
        throw ValidationError("scale '" + name_ + "': r(g) * r(4 - g) != 1 at g = " +
                              to_string(GamePoints::from_half_points(h)));
      if (h > 0 && !(ratios_[h - 1] < ratios_[h]))
        throw ValidationError("scale '" + name_ + "': ratios must increase strictly with game points");
    }
  }

  const std::string& name() const noexcept { return name_; }
  Rational ratio(GamePoints g) const { return ratios_[g.half_points()]; }
  double value(GamePoints g) const { return ratio(g).to_double(); }
  const Table& table() const noexcept { return ratios_; }

private:
  std::string name_;
  Table ratios_;
};

/// One of the four built-in conversions "A", "B", "C", "D".
inline RatioScale builtin_scale(std::string_view name) {
  using R = Rational;
  // Winner's side only; the losing half follows from reciprocity.
  std::array<Rational, 4> wins;
  if (name == "A") wins = {R(2), R(3), R(4), R(5)};
  else if (name == "B") wins = {R(2), R(4), R(6), R(8)};
  else if (name == "C") wins = {R(3, 2), R(2), R(5, 2), R(3)};
  else if (name == "D") wins = {R(3), R(7, 2), R(4), R(5)};
  else throw ConfigError("unknown scale '" + std::string(name) + "', expected A, B, C or D");

  RatioScale::Table t;
  t[4] = R(1);
  for (int k = 0; k < 4; ++k) {
    t[5 + k] = wins[k];
    t[3 - k] = reciprocal(wins[k]);
  }
  return RatioScale(std::string(name), t);
}

/// Reads a custom scale CSV `game_points,ratio` with one row for each of 0, 0.5, ..., 4.
/// Ratios may be written as integers, fractions `p/q` or decimals.
inline RatioScale parse_scale(std::istream& in, std::string name = "custom") {
  std::string line;
  if (!csv::read_line(in, line, true) || csv::trim(line) != "game_points,ratio")
    throw ParseError(1, "bad scale header, expected 'game_points,ratio'");
  std::array<std::optional<Rational>, GamePoints::kMaxHalfPoints + 1> seen;
  for (std::size_t lineno = 2; csv::read_line(in, line, false); ++lineno) {
    if (csv::trim(line).empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != 2) throw ParseError(lineno, "expected 2 fields");
    const GamePoints g = detail::parse_game_points(f[0], lineno);
    if (seen[g.half_points()]) throw ParseError(lineno, "duplicate game points " + to_string(g));
    try {
      seen[g.half_points()] = parse_rational(csv::trim(f[1]));
    } catch (const ValidationError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  RatioScale::Table t;
  for (int h = 0; h <= GamePoints::kMaxHalfPoints; ++h) {
    if (!seen[h]) throw ParseError(0, "scale misses game points " + to_string(GamePoints::from_half_points(h)));
    t[h] = *seen[h];
  }
  return RatioScale(std::move(name), t);
}

/// Known upper-triangle element a_ij, i < j.
struct PcmEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 1;
};

/// Reciprocal pairwise comparison matrix with missing elements. Only the known upper
/// triangle is stored; a_ji = 1 / a_ij and a_ii = 1 are implied.
class IncompletePCM {
public:
  IncompletePCM() = default;

  IncompletePCM(std::size_t n, std::vector<PcmEntry> entries, std::string scale = {})
      : n_(n), entries_(std::move(entries)), scale_(std::move(scale)) {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      auto& e = entries_[k];
      if (e.i == e.j || e.i >= n_ || e.j >= n_) throw ValidationError("PCM entry index out of range");
      if (!(e.value > 0) || !std::isfinite(e.value)) throw ValidationError("PCM entries must be positive");
      if (e.i > e.j) {
        std::swap(e.i, e.j);
        e.value = 1.0 / e.value;
      }
      if (!index_.emplace(std::make_pair(e.i, e.j), k).second)
        throw ValidationError("pair (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") has two results");
    }
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<PcmEntry>& entries() const noexcept { return entries_; }
  const std::string& scale() const noexcept { return scale_; }

  std::size_t upper_triangle() const noexcept { return n_ * (n_ - (n_ ? 1 : 0)) / 2; }
  /// Number of missing upper-triangle elements.
  std::size_t missing() const noexcept { return upper_triangle() - entries_.size(); }
  double density() const noexcept {
    return upper_triangle() ? static_cast<double>(entries_.size()) / upper_triangle() : 1.0;
  }

  /// a_ij when known (including the diagonal and reciprocals).
  std::optional<double> value(std::size_t i, std::size_t j) const {
    if (i == j) return 1.0;
    const auto it = index_.find({std::min(i, j), std::max(i, j)});
    if (it == index_.end()) return std::nullopt;
    const double v = entries_[it->second].value;
    return i < j ? v : 1.0 / v;
  }

  bool known(std::size_t i, std::size_t j) const { return value(i, j).has_value(); }

private:
  std::size_t n_ = 0;
  std::vector<PcmEntry> entries_;
  std::string scale_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
};

/// One entry per match; alternatives follow the tournament's team order.
inline IncompletePCM build_pcm(const Tournament& t, const RatioScale& scale) {
  std::vector<PcmEntry> entries;
  entries.reserve(t.matches().size());
  for (const auto& m : t.matches()) {
    std::size_t a = t.at(m.team_a);
    std::size_t b = t.at(m.team_b);
    GamePoints g = m.game_points_a;
    if (a > b) {
      std::swap(a, b);
      g = g.opponent();
    }
    entries.push_back({a, b, scale.value(g)});
  }
  return IncompletePCM(t.size(), std::move(entries), scale.name());
}

struct ComparisonGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(vertices);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

inline ComparisonGraph comparison_graph(const IncompletePCM& m) {
  ComparisonGraph g{m.size(), {}};
  g.edges.reserve(m.entries().size());
  for (const auto& e : m.entries()) g.edges.emplace_back(e.i, e.j);
  return g;
}

/// Components in order of their smallest vertex, each sorted ascending.
inline std::vector<std::vector<std::size_t>> connected_components(const ComparisonGraph& g) {
  const auto adj = g.adjacency();
  std::vector<bool> seen(g.vertices, false);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < g.vertices; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      comp.push_back(v);
      for (auto u : adj[v])
        if (!seen[u]) {
          seen[u] = true;
          q.push(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

/// A single vertex counts as connected; the empty graph does too.
inline bool is_connected(const ComparisonGraph& g) { return connected_components(g).size() <= 1; }

inline void require_connected(const IncompletePCM& m) {
  auto components = connected_components(comparison_graph(m));
  if (components.size() > 1) throw DisconnectedGraphError(std::move(components));
}

}  // namespace olyrank

#endif  // OLYRANK_PCM_HPP
