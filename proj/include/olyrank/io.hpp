#ifndef OLYRANK_IO_HPP
#define OLYRANK_IO_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "olyrank/compare.hpp"
#include "olyrank/csv.hpp"
#include "olyrank/em.hpp"
#include "olyrank/errors.hpp"
#include "olyrank/mds.hpp"
#include "olyrank/pcm.hpp"
#include "olyrank/rankings.hpp"
#include "olyrank/tournament.hpp"
#include "olyrank/weights.hpp"

// File schemas for everything the pipeline writes. Indices in PCM and completion
// files are 1-based; reals are written with the shortest round-trip representation.

namespace olyrank::io {

using nlohmann::json;

namespace detail {

inline std::vector<std::string> expect(std::istream& in, const std::string& header) {
  std::string line;
  if (!csv::read_line(in, line, true) || std::string(csv::trim(line)) != header)
    throw ParseError(1, "expected header '" + header + "'");
  return {};
}

template <typename F>
void for_rows(std::istream& in, std::size_t fields, F&& f) {
  std::string line;
  for (std::size_t lineno = 2; csv::read_line(in, line, false); ++lineno) {
    if (csv::trim(line).empty()) continue;
    auto row = csv::split_line(line);
    if (row.size() != fields)
      throw ParseError(lineno, "expected " + std::to_string(fields) + " fields, got " + std::to_string(row.size()));
    try {
      f(row);
    } catch (const std::logic_error& e) {
      throw ParseError(lineno, e.what());
    }
  }
}

}  // namespace detail

// ---- PCM -------------------------------------------------------------------

inline void write_pcm_csv(const IncompletePCM& m, std::ostream& out) {
  out << "i,j,a_ij\n";
  for (const auto& e : m.entries()) out << e.i + 1 << ',' << e.j + 1 << ',' << csv::format_real(e.value) << '\n';
}

inline json pcm_sidecar(const IncompletePCM& m, const std::vector<Team>& teams) {
  json teams_json = json::array();
  for (const auto& t : teams) teams_json.push_back(t.id);
  return json{{"n", m.size()},
              {"d", m.missing()},
              {"known", m.entries().size()},
              {"density", m.density()},
              {"scale", m.scale()},
              {"teams", teams_json}};
}

inline IncompletePCM read_pcm_csv(std::istream& in, std::size_t n, std::string scale = {}) {
  detail::expect(in, "i,j,a_ij");
  std::vector<PcmEntry> entries;
  detail::for_rows(in, 3, [&](const std::vector<std::string>& row) {
    const std::size_t i = std::stoul(row[0]);
    const std::size_t j = std::stoul(row[1]);
    if (i == 0 || j == 0) throw std::invalid_argument("indices are 1-based");
    entries.push_back({i - 1, j - 1, std::stod(row[2])});
  });
  return IncompletePCM(n, std::move(entries), std::move(scale));
}

// ---- weights and rankings --------------------------------------------------

/// `team_id,weight,position`, heaviest first.
inline void write_weights_csv(const WeightVector& w, const Ranking& r, std::ostream& out) {
  out << "team_id,weight,position\n";
  for (auto k : r.order()) out << csv::escape(r.team_ids[k]) << ',' << csv::format_real(w[k]) << ',' << r.position[k] << '\n';
}

inline json weights_json(const WeightVector& w, const Ranking& r) {
  json rows = json::array();
  for (auto k : r.order()) rows.push_back({{"team_id", r.team_ids[k]}, {"weight", w[k]}, {"position", r.position[k]}});
  return json{{"method", w.method}, {"scale", w.scale}, {"label", r.label}, {"weights", rows}};
}

struct WeightRow {
  std::string team_id;
  double weight = 0;
  int position = 0;
};

inline std::vector<WeightRow> read_weights_csv(std::istream& in) {
  detail::expect(in, "team_id,weight,position");
  std::vector<WeightRow> rows;
  detail::for_rows(in, 3, [&](const std::vector<std::string>& row) {
    rows.push_back({row[0], std::stod(row[1]), std::stoi(row[2])});
  });
  return rows;
}

/// `position,team_id,team_name,primary_key_value`, in rank order.
inline void write_ranking_csv(const Ranking& r, std::ostream& out) {
  out << "position,team_id,team_name,primary_key_value\n";
  for (auto k : r.order())
    out << r.position[k] << ',' << csv::escape(r.team_ids[k]) << ',' << csv::escape(r.team_names[k]) << ','
        << csv::format_real(r.primary_key[k]) << '\n';
}

inline Ranking read_ranking_csv(std::istream& in, std::string label) {
  detail::expect(in, "position,team_id,team_name,primary_key_value");
  Ranking r;
  r.label = std::move(label);
  detail::for_rows(in, 4, [&](const std::vector<std::string>& row) {
    r.position.push_back(std::stoi(row[0]));
    r.team_ids.push_back(row[1]);
    r.team_names.push_back(row[2]);
    r.primary_key.push_back(std::stod(row[3]));
  });
  check_permutation(r);
  return r;
}

/// One row per team, one column per ranking, plus tie-break metadata per ranking.
inline json rankings_bundle(const std::vector<Ranking>& rankings) {
  json meta = json::array();
  for (const auto& r : rankings)
    meta.push_back({{"label", r.label}, {"tie_broken_by_id", r.tie_broken_by_id()}, {"id_tie_breaks", r.id_tie_breaks}});
  json columns = json::array();
  for (const auto& r : rankings) columns.push_back(r.label);
  json rows = json::array();
  if (!rankings.empty()) {
    const auto& first = rankings.front();
    for (auto k : first.order()) {
      json positions = json::array();
      for (const auto& r : rankings) positions.push_back(align(first, r).y[k]);
      rows.push_back({{"team_id", first.team_ids[k]}, {"team_name", first.team_names[k]}, {"positions", positions}});
    }
  }
  return json{{"columns", columns}, {"rankings", meta}, {"teams", rows}};
}

// ---- comparison ------------------------------------------------------------

/// Square table with a header row and a header column of ranking labels.
inline void write_distance_csv(const DistanceMatrix& dm, std::ostream& out) {
  out << to_string(dm.metric);
  for (const auto& l : dm.labels) out << ',' << csv::escape(l);
  out << '\n';
  for (std::size_t i = 0; i < dm.size(); ++i) {
    out << csv::escape(dm.labels[i]);
    for (std::size_t j = 0; j < dm.size(); ++j) out << ',' << csv::format_real(dm(i, j));
    out << '\n';
  }
}

inline DistanceMatrix read_distance_csv(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line, true)) throw ParseError(1, "empty distance table");
  auto header = csv::split_line(line);
  DistanceMatrix dm;
  if (header.front() == "tau") dm.metric = Metric::tau;
  else if (header.front() == "spearman") dm.metric = Metric::spearman;
  else throw ParseError(1, "unknown metric '" + header.front() + "'");
  dm.labels.assign(header.begin() + 1, header.end());
  detail::for_rows(in, dm.labels.size() + 1, [&](const std::vector<std::string>& row) {
    if (row[0] != dm.labels[dm.values.size()]) throw std::invalid_argument("row label does not match header");
    std::vector<double> values;
    for (std::size_t j = 1; j < row.size(); ++j) values.push_back(std::stod(row[j]));
    dm.values.push_back(std::move(values));
  });
  if (dm.values.size() != dm.labels.size()) throw ParseError(0, "distance table is not square");
  return dm;
}

inline json distance_json(const DistanceMatrix& dm) {
  return json{{"metric", to_string(dm.metric)}, {"labels", dm.labels}, {"values", dm.values}};
}

inline void write_score_table_csv(const ScoreTable& s, std::ostream& out) {
  out << "team_id,team_name,match_points,sonneborn_berger,game_points,buchholz,wins,draws,losses,matches,mix_factor\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& r = s.rows[k];
    out << csv::escape(s.teams[k].id) << ',' << csv::escape(s.teams[k].name) << ',' << r.match_points << ','
        << csv::format_real(r.sonneborn_berger) << ',' << csv::format_real(r.game_points) << ',' << r.buchholz << ','
        << r.wins << ',' << r.draws << ',' << r.losses << ',' << r.matches() << ',' << csv::format_real(r.mix_factor)
        << '\n';
  }
}

inline void write_distribution_csv(const ResultHistogram& h, std::ostream& out) {
  out << "winner_game_points,matches\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << to_string(GamePoints::from_double(ResultHistogram::kBins[b])) << ',' << h.counts[b] << '\n';
}

inline json weight_stats_json(const WeightStats& s) {
  return json{{"max", s.max},
              {"min", s.min},
              {"max_min_ratio", s.max_min_ratio},
              {"mean", s.mean},
              {"std_dev", s.std_dev},
              {"average_win_ratio", s.average_win_ratio},
              {"power", s.power}};
}

// ---- EM completion and MDS -------------------------------------------------

inline void write_completion_csv(const CompletionState& c, std::ostream& out) {
  out << "i,j,x_ij\n";
  for (const auto& e : c.x) out << e.i + 1 << ',' << e.j + 1 << ',' << csv::format_real(e.value) << '\n';
}

inline json completion_json(const CompletionState& c) {
  return json{{"lambda_max", c.lambda_max},
              {"missing", c.x.size()},
              {"sweeps", c.sweeps},
              {"evaluations", c.evaluations},
              {"trace", c.trace}};
}

/// `label,x,y`; y is 0 for one-dimensional embeddings.
inline void write_mds_csv(const MdsEmbedding& e, std::ostream& out) {
  out << "label,x,y\n";
  for (Eigen::Index i = 0; i < e.coords.rows(); ++i)
    out << csv::escape(e.labels[i]) << ',' << csv::format_real(e.coords(i, 0)) << ','
        << csv::format_real(e.coords.cols() > 1 ? e.coords(i, 1) : 0.0) << '\n';
}

inline json mds_json(const MdsEmbedding& e) {
  return json{{"dims", e.coords.cols()}, {"stress", e.stress}, {"rsq", e.rsq},      {"a", e.a},
              {"b", e.b},                {"iterations", e.iterations},             {"trace", e.trace}};
}

}  // namespace olyrank::io

#endif  // OLYRANK_IO_HPP
