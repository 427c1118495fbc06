#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "olyrank/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rankings for Swiss-system team tournaments from incomplete pairwise comparison matrices"};
  app.require_subcommand(1);

  olyrank::RunConfig config;
  if (const char* dir = std::getenv("OLYRANK_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
  std::vector<std::string> formats{"csv", "json"};

  auto* rank = app.add_subcommand("rank", "Compute rankings, comparison tables and statistics");
  rank->add_option("--input", config.input, "Results CSV (round,team_a,team_b,game_points_a)")->required();
  rank->add_option("--roster", config.roster, "Roster CSV (id,name,start_rank)");
  rank->add_option("--scales", config.scales, "Ratio scales for LLSM: A,B,C,D,custom")->delimiter(',');
  rank->add_option("--custom-scale", config.custom_scale, "Custom scale CSV (game_points,ratio)");
  rank->add_option("--methods", config.methods,
                   "llsm,em,official,sonneborn-berger,buchholz,mix,start")
      ->delimiter(',');
  rank->add_option("--em-scales", config.em_scales, "Scales for the eigenvector method (default C)")->delimiter(',');
  rank->add_option("--metrics", config.metrics, "spearman,tau")->delimiter(',');
  rank->add_flag("--mds", config.mds, "Embed the tau distance table with interval MDS");
  rank->add_option("--mds-dims", config.mds_dims, "MDS dimensions (1 or 2)");
  rank->add_option("--output", config.output_dir, "Output directory (default $OLYRANK_OUTPUT_DIR or olyrank-out)");
  rank->add_option("--formats", formats, "csv,json")->delimiter(',');
  rank->add_option("--em-sweep-cap", config.em.max_sweeps, "Maximum cyclic-coordinate sweeps");
  rank->add_option("--em-sweep-tolerance", config.em.sweep_tolerance, "Stop when a sweep lowers lambda_max less");
  rank->add_option("--em-line-tolerance", config.em.line_tolerance, "Relative line-search tolerance on log x");
  rank->add_option("--eigen-tolerance", config.em.eigen.tolerance, "Relative power-iteration tolerance");
  rank->add_flag("!--sequential", config.parallel, "Run solver jobs one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : olyrank::kExitBadConfig;
  }

  config.csv = config.json = false;
  for (const auto& f : formats) {
    if (f == "csv") config.csv = true;
    else if (f == "json") config.json = true;
    else {
      std::cerr << "error: unknown format '" << f << "'\n";
      return olyrank::kExitBadConfig;
    }
  }
  return olyrank::run(config, std::cerr);
}
