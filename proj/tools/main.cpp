#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"minsurf: curvature ledgers for smoothed holomorphic disks"};
  app.require_subcommand(1);

  msfcli::RunConfig config;
  std::string format = "csv";
  double eta = 0.0, r = 0.0;
  int k_max = 0;

  const std::map<std::string, msfcli::Subcommand> names = {
      {"verify-bounds", msfcli::Subcommand::verify_bounds},
      {"chart-geometry", msfcli::Subcommand::chart_geometry},
      {"neck-sweep", msfcli::Subcommand::neck_sweep},
      {"assemble", msfcli::Subcommand::assemble},
      {"growth-scan", msfcli::Subcommand::growth_scan},
  };
  const std::map<std::string, const char*> help = {
      {"verify-bounds", "sampled sup norms of p_k, p_k', p_k'' against the closed-form bounds"},
      {"chart-geometry", "wedge vs finite-difference curvature and tangent slopes at the nodes"},
      {"neck-sweep", "curvature-mass bracket of one neck along an eta ladder"},
      {"assemble", "full curvature ledger of the smoothed surface at one k"},
      {"growth-scan", "ledgers for k = 1..k_max and the total curvature growth rate"},
  };

  std::map<std::string, CLI::App*> subs;
  std::vector<CLI::Option*> eta_opts, r_opts, kmax_opts;
  for (const auto& [name, kind] : names) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    subs[name] = sub;
    sub->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", config.out_path, "report path (default: stdout)");
    sub->add_option("--plot-dir", config.plot_dir, "directory for two-column plot data files");
    sub->add_option("--tol", config.tol, "per-integral quadrature tolerance")->capture_default_str();
    sub->add_flag("!--serial", config.parallel, "evaluate necks sequentially");
  }
  for (const char* name : {"verify-bounds", "chart-geometry", "assemble"})
    subs[name]->add_option("--k", config.k, "family index")->capture_default_str();
  kmax_opts.push_back(subs["verify-bounds"]->add_option("--k-max", k_max, "scan k..k-max"));
  subs["verify-bounds"]->add_option("--grid-n", config.grid_n, "polar grid resolution")->capture_default_str();
  subs["chart-geometry"]->add_option("--samples", config.samples, "random sample points")->capture_default_str();
  subs["chart-geometry"]->add_option("--seed", config.seed, "sampling seed")->capture_default_str();
  kmax_opts.push_back(subs["growth-scan"]->add_option("--k-max", k_max, "largest k (default 6)"));
  for (const char* name : {"assemble", "growth-scan"}) {
    eta_opts.push_back(subs[name]->add_option("--eta", eta, "smoothing parameter for every neck"));
    r_opts.push_back(subs[name]->add_option("--r", r, "ball radius for every neck"));
    subs[name]->add_option("--flatten", config.flattened, "double points kept as crossings")
        ->delimiter(',');
  }
  CLI::App* sweep = subs["neck-sweep"];
  sweep->add_option("--eta-ladder", config.eta_ladder, "a..b (decades) or comma list")
      ->capture_default_str();
  sweep->add_option("--C", config.C, "neck slope")->capture_default_str();
  sweep->add_option("--u0", config.u0, "node position")->capture_default_str();
  r_opts.push_back(sweep->add_option("--r", r, "ball radius (default 0.05)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : msfcli::kUsageError;
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) config.subcommand = names.at(name);
  const auto given = [](const std::vector<CLI::Option*>& opts) {
    for (const CLI::Option* o : opts)
      if (o->count()) return true;
    return false;
  };
  if (given(eta_opts)) config.eta = eta;
  if (given(r_opts)) config.r = r;
  if (given(kmax_opts)) config.k_max = k_max;
  config.format = format == "json" ? msfcli::Format::json : msfcli::Format::csv;
  return msfcli::run(config, std::cout, std::cerr);
}
