#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace msfcli {

enum class Subcommand { verify_bounds, chart_geometry, neck_sweep, assemble, growth_scan };
enum class Format { csv, json };

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kNonConvergence = 2,
  kUsageError = 3,  // invalid configuration, unwritable output, other API errors
};

struct RunConfig {
  Subcommand subcommand = Subcommand::growth_scan;
  int k = 1;
  std::optional<int> k_max;            // growth-scan default 6; verify-bounds scans k..k_max
  std::optional<double> eta;
  std::optional<double> r;
  double C = 1.0;                      // neck-sweep only
  double u0 = 0.0;                     // neck-sweep only
  std::string eta_ladder = "1e-2..1e-6";
  std::vector<int> flattened;
  double tol = 1e-8;
  int grid_n = 512;
  int samples = 100;
  unsigned seed = 20240601u;
  Format format = Format::csv;
  std::string out_path;                // empty: standard output
  std::string plot_dir;                // empty: no plot files
  bool parallel = true;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PlotSeries {
  std::string name;  // file stem
  std::vector<std::pair<double, double>> points;
};

struct Report {
  int exit_code = kPass;
  std::string text;
  std::vector<PlotSeries> plots;
  std::vector<std::string> failed_checks;
};

std::string_view to_string(Subcommand s) noexcept;
std::optional<Subcommand> parse_subcommand(std::string_view name) noexcept;

/// "a..b" walks decades from a to b inclusive; otherwise a comma list.
std::vector<double> parse_eta_ladder(std::string_view text);

/// Shortest round-trip decimal form.
std::string format_number(double value);

/// Throws ConfigError describing the first violated constraint.
void validate(const RunConfig& config);

/// Runs the pipeline and renders the report without touching the filesystem.
/// Throws ConfigError for invalid configurations.
Report build_report(const RunConfig& config);

/// build_report plus writing the report and plot files; diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace msfcli
