#ifndef OLYRANK_PIPELINE_HPP
#define OLYRANK_PIPELINE_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "olyrank/compare.hpp"
#include "olyrank/em.hpp"
#include "olyrank/errors.hpp"
#include "olyrank/io.hpp"
#include "olyrank/llsm.hpp"
#include "olyrank/mds.hpp"
#include "olyrank/pcm.hpp"
#include "olyrank/rankings.hpp"
#include "olyrank/tournament.hpp"

namespace olyrank {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitDisconnected = 3,
  kExitNoConvergence = 4,
  kExitBadConfig = 5,
};

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods{"llsm", "em", "official", "sonneborn-berger", "buchholz", "mix", "start"};
  return methods;
}

struct RunConfig {
  std::string input;
  std::string roster;
  std::vector<std::string> scales{"A", "B", "C", "D"};
  std::string custom_scale;  // path of a `game_points,ratio` file, registered as scale "custom"
  std::vector<std::string> methods{"llsm", "official"};
  std::vector<std::string> em_scales;  // empty: C only
  std::vector<std::string> metrics{"spearman", "tau"};
  bool mds = false;
  int mds_dims = 2;
  std::string output_dir = "olyrank-out";
  bool csv = true;
  bool json = true;
  EmOptions em{};
  bool parallel = true;
};

/// Throws ConfigError for an unusable configuration.
inline void validate(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("no input file given");
  if (c.methods.empty()) throw ConfigError("select at least one method");
  for (const auto& m : c.methods)
    if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
      throw ConfigError("unknown method '" + m + "'");
  auto check_scale = [&](const std::string& s) {
    if (s == "custom") {
      if (c.custom_scale.empty()) throw ConfigError("scale 'custom' needs --custom-scale");
    } else if (s != "A" && s != "B" && s != "C" && s != "D") {
      throw ConfigError("unknown scale '" + s + "'");
    }
  };
  for (const auto& s : c.scales) check_scale(s);
  for (const auto& s : c.em_scales) check_scale(s);
  const bool uses_em = std::find(c.methods.begin(), c.methods.end(), "em") != c.methods.end();
  if (uses_em && c.em_scales.empty() && c.scales.empty() && c.custom_scale.empty())
    throw ConfigError("method 'em' needs at least one scale");
  const bool uses_llsm = std::find(c.methods.begin(), c.methods.end(), "llsm") != c.methods.end();
  if (uses_llsm && c.scales.empty() && c.custom_scale.empty()) throw ConfigError("method 'llsm' needs at least one scale");
  for (const auto& m : c.metrics)
    if (m != "tau" && m != "spearman") throw ConfigError("unknown metric '" + m + "'");
  if (c.mds_dims != 1 && c.mds_dims != 2) throw ConfigError("--mds-dims must be 1 or 2");
  if (!c.csv && !c.json) throw ConfigError("select at least one output format");
  if (c.em.max_sweeps < 1) throw ConfigError("EM sweep cap must be positive");
  if (!(c.em.eigen.tolerance > 0) || !(c.em.sweep_tolerance >= 0) || !(c.em.line_tolerance > 0))
    throw ConfigError("solver tolerances must be positive");
}

namespace detail {

class OutputDir {
public:
  explicit OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + (dir_ / name).string() + "'");
    body(out);
    files_.push_back(name);
  }

  void write_json(const std::string& name, const nlohmann::json& j) {
    write(name, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  }

  const std::vector<std::string>& files() const noexcept { return files_; }

private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return in;
}

/// One weight-based job: a method on one scale.
struct WeightJob {
  std::string method;  // "llsm" or "em"
  std::string scale;
  WeightVector weights;
  Ranking ranking;
  nlohmann::json diagnostics;
  std::optional<CompletionState> completion;
};

inline std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace detail

/// Runs the whole pipeline and returns its exit code. Diagnostics go to `log`.
/// Outputs depend only on the configuration and the input bytes.
inline int run(const RunConfig& config, std::ostream& log) {
  using nlohmann::json;
  json manifest;
  manifest["config"] = {{"input", config.input},
                        {"roster", config.roster},
                        {"scales", config.scales},
                        {"custom_scale", config.custom_scale},
                        {"methods", config.methods},
                        {"em_scales", config.em_scales},
                        {"metrics", config.metrics},
                        {"mds", config.mds},
                        {"mds_dims", config.mds_dims},
                        {"formats", {{"csv", config.csv}, {"json", config.json}}},
                        {"em", {{"max_sweeps", config.em.max_sweeps},
                                {"sweep_tolerance", config.em.sweep_tolerance},
                                {"line_tolerance", config.em.line_tolerance},
                                {"eigen_tolerance", config.em.eigen.tolerance}}}};

  std::optional<detail::OutputDir> out;
  auto finish = [&](int code, const std::string& message) {
    manifest["status"] = {{"exit_code", code}, {"message", message}};
    if (out) {
      try {
        manifest["files"] = out->files();
        out->write_json("manifest.json", manifest);
      } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
      }
    }
    if (code != kExitOk) log << "error: " << message << '\n';
    return code;
  };

  try {
    validate(config);
    out.emplace(config.output_dir);
  } catch (const ConfigError& e) {
    return finish(kExitBadConfig, e.what());
  }

  auto has = [&](const std::string& m) {
    return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
  };

  try {
    std::vector<Team> roster;
    if (!config.roster.empty()) {
      auto in = detail::open_input(config.roster);
      roster = parse_roster(in);
    }
    auto in = detail::open_input(config.input);
    const Tournament tournament = parse_results(in, config.roster.empty() ? nullptr : &roster);
    const auto& teams = tournament.teams();

    std::map<std::string, RatioScale> scales;
    for (const auto& s : config.scales)
      if (s != "custom") scales.emplace(s, builtin_scale(s));
    if (!config.custom_scale.empty()) {
      auto sin = detail::open_input(config.custom_scale);
      scales.emplace("custom", parse_scale(sin, "custom"));
    }
    std::vector<std::string> llsm_scales;
    for (const auto& s : config.scales) llsm_scales.push_back(s);
    if (!config.custom_scale.empty() &&
        std::find(llsm_scales.begin(), llsm_scales.end(), "custom") == llsm_scales.end())
      llsm_scales.push_back("custom");
    std::vector<std::string> em_scales = config.em_scales.empty() ? std::vector<std::string>{"C"} : config.em_scales;
    for (const auto& s : em_scales)
      if (!scales.count(s)) scales.emplace(s, builtin_scale(s));

    const ScoreTable scores = compute_score_table(tournament);
    const ResultHistogram histogram = result_distribution(tournament);

    manifest["tournament"] = {{"teams", tournament.size()},
                              {"rounds", tournament.rounds()},
                              {"matches", tournament.matches().size()},
                              {"short_schedule_teams", scores.short_schedule},
                              {"short_schedule_policy",
                               "TB2/TB4 drop one lowest opponent from the matches actually played; "
                               "F uses the team's own match count"}};

    const bool weight_methods = has("llsm") || has("em");
    if (weight_methods) {
      const IncompletePCM structure = build_pcm(tournament, scales.begin()->second);
      const auto components = connected_components(comparison_graph(structure));
      json listing = json::array();
      for (const auto& comp : components) {
        json ids = json::array();
        for (auto v : comp) ids.push_back(teams[v].id);
        listing.push_back(ids);
      }
      manifest["comparison_graph"] = {{"connected", components.size() <= 1},
                                      {"components", components.size()},
                                      {"known", structure.entries().size()},
                                      {"missing", structure.missing()},
                                      {"density", structure.density()}};
      if (components.size() > 1) {
        manifest["comparison_graph"]["component_listing"] = listing;
        std::ostringstream msg;
        msg << "comparison graph is disconnected; components:";
        for (const auto& comp : listing) msg << "\n  " << comp.dump();
        return finish(kExitDisconnected, msg.str());
      }
    }

    // Solver jobs are independent; results are consumed in a fixed order.
    std::vector<std::pair<std::string, std::string>> job_specs;
    if (has("llsm"))
      for (const auto& s : llsm_scales) job_specs.emplace_back("llsm", s);
    if (has("em"))
      for (const auto& s : em_scales) job_specs.emplace_back("em", s);

    std::map<std::string, IncompletePCM> pcms;
    for (const auto& [method, s] : job_specs)
      if (!pcms.count(s)) pcms.emplace(s, build_pcm(tournament, scales.at(s)));

    auto solve = [&](const std::string& method, const std::string& s) {
      detail::WeightJob job{method, s, {}, {}, {}, std::nullopt};
      const IncompletePCM& m = pcms.at(s);
      if (method == "llsm") {
        const auto sol = llsm_solve(m);
        job.weights = sol.weights;
        job.diagnostics = {{"objective", sol.objective}, {"normal_equation_residual", sol.residual}};
      } else {
        const auto sol = em_solve(m, config.em);
        job.weights = sol.eigen.weights;
        job.completion = sol.completion;
        job.diagnostics = {{"lambda_max", sol.eigen.lambda_max},
                           {"sweeps", sol.completion.sweeps},
                           {"evaluations", sol.completion.evaluations},
                           {"eigen_residual", sol.eigen.residual}};
      }
      job.ranking = ranking_from_weights(job.weights, teams);
      return job;
    };
    std::vector<std::future<detail::WeightJob>> futures;
    for (const auto& [method, s] : job_specs)
      futures.push_back(std::async(config.parallel ? std::launch::async : std::launch::deferred, solve, method, s));
    std::vector<detail::WeightJob> jobs;
    for (auto& f : futures) jobs.push_back(f.get());

    // Output, serialized.
    if (config.csv) {
      out->write("scores.csv", [&](std::ostream& o) { io::write_score_table_csv(scores, o); });
      out->write("distribution.csv", [&](std::ostream& o) { io::write_distribution_csv(histogram, o); });
    }
    for (const auto& [s, m] : pcms) {
      if (config.csv) out->write("pcm-" + s + ".csv", [&](std::ostream& o) { io::write_pcm_csv(m, o); });
      out->write_json("pcm-" + s + ".json", io::pcm_sidecar(m, teams));
    }

    std::vector<Ranking> rankings;
    json tie_flags = json::object();
    json solver = json::object();
    auto emit_ranking = [&](const Ranking& r, const std::string& stem) {
      if (config.csv) out->write(stem + ".csv", [&](std::ostream& o) { io::write_ranking_csv(r, o); });
      tie_flags[r.label] = {{"tie_broken_by_id", r.tie_broken_by_id()}, {"id_tie_breaks", r.id_tie_breaks}};
      rankings.push_back(r);
    };

    if (has("start")) emit_ranking(start_ranking(teams), "start");
    if (has("official")) emit_ranking(official_final_ranking(scores), "official");
    json stats = json::object();
    for (const auto& job : jobs) {
      const std::string stem = job.method + "-" + job.scale;
      emit_ranking(job.ranking, stem);
      if (config.csv)
        out->write("weights-" + stem + ".csv", [&](std::ostream& o) { io::write_weights_csv(job.weights, job.ranking, o); });
      if (config.json) out->write_json(stem + ".json", io::weights_json(job.weights, job.ranking));
      if (job.completion) {
        if (config.csv)
          out->write("completion-" + job.scale + ".csv", [&](std::ostream& o) { io::write_completion_csv(*job.completion, o); });
        out->write_json("completion-" + job.scale + ".json", io::completion_json(*job.completion));
      }
      solver[job.ranking.label] = job.diagnostics;
      if (histogram.decisive() > 0)
        stats[job.ranking.label] = io::weight_stats_json(weight_stats(job.weights, histogram, scales.at(job.scale)));
    }
    if (has("sonneborn-berger")) emit_ranking(sonneborn_berger_ranking(scores), "sonneborn-berger");
    if (has("buchholz")) emit_ranking(buchholz_ranking(scores), "buchholz");
    if (has("mix")) emit_ranking(mix_ranking(scores), "mix");

    if (!stats.empty()) {
      if (config.csv)
        out->write("weight-stats.csv", [&](std::ostream& o) {
          o << "label,max,min,max_min_ratio,mean,std_dev,average_win_ratio,power\n";
          for (const auto& [label, s] : stats.items()) {
            o << csv::escape(label);
            for (const char* key : {"max", "min", "max_min_ratio", "mean", "std_dev", "average_win_ratio", "power"})
              o << ',' << csv::format_real(s[key].get<double>());
            o << '\n';
          }
        });
      if (config.json) out->write_json("weight-stats.json", stats);
    }

    std::vector<std::pair<std::string, AdjacencyStats>> adjacency;
    for (const auto& r : rankings) adjacency.emplace_back(r.label, adjacency_stats(tournament, r));
    if (config.csv)
      out->write("adjacency.csv", [&](std::ostream& o) {
        o << "label,mean,median,matches\n";
        for (const auto& [label, a] : adjacency)
          o << csv::escape(label) << ',' << csv::format_real(a.mean) << ',' << csv::format_real(a.median) << ','
            << a.matches << '\n';
      });
    if (config.json) out->write_json("rankings.json", io::rankings_bundle(rankings));

    std::optional<DistanceMatrix> tau_table;
    if (rankings.size() >= 2) {
      json tables = json::object();
      for (const auto& name : config.metrics) {
        const Metric metric = name == "tau" ? Metric::tau : Metric::spearman;
        const DistanceMatrix dm = distance_table(rankings, metric);
        if (config.csv) out->write("distance-" + name + ".csv", [&](std::ostream& o) { io::write_distance_csv(dm, o); });
        tables[name] = io::distance_json(dm);
        if (metric == Metric::tau) tau_table = dm;
      }
      if (tau_table) tables["tau_max"] = tau_max(tournament.size());
      if (config.json && !config.metrics.empty()) out->write_json("distances.json", tables);
    } else if (!config.metrics.empty()) {
      log << "note: fewer than two rankings, no distance tables written\n";
    }

    if (config.mds) {
      if (rankings.size() < 3) throw ConfigError("--mds needs at least three rankings");
      const DistanceMatrix dm = tau_table ? *tau_table : distance_table(rankings, Metric::tau);
      const MdsEmbedding e = embed(dm, MdsOptions{config.mds_dims});
      if (config.csv) out->write("mds.csv", [&](std::ostream& o) { io::write_mds_csv(e, o); });
      out->write_json("mds.json", io::mds_json(e));
      solver["mds"] = {{"iterations", e.iterations}, {"stress", e.stress}, {"rsq", e.rsq}};
    }

    manifest["tie_flags"] = tie_flags;
    manifest["solver"] = solver;
    return finish(kExitOk, "ok");
  } catch (const DisconnectedGraphError& e) {
    return finish(kExitDisconnected, e.what());
  } catch (const ConvergenceError& e) {
    return finish(kExitNoConvergence, e.what());
  } catch (const ConfigError& e) {
    return finish(kExitBadConfig, e.what());
  } catch (const Error& e) {
    return finish(kExitInvalidInput, e.what());
  }
}

}  // namespace olyrank

#endif  // OLYRANK_PIPELINE_HPP
