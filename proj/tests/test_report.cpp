#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "report.hpp"

using namespace msfcli;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(Subcommand s) {
  RunConfig c;
  c.subcommand = s;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("subcommand names round-trip") {
  for (auto s : {Subcommand::verify_bounds, Subcommand::chart_geometry, Subcommand::neck_sweep,
                 Subcommand::assemble, Subcommand::growth_scan})
    CHECK(parse_subcommand(to_string(s)) == s);
  CHECK(to_string(Subcommand::growth_scan) == "growth-scan");
  CHECK_FALSE(parse_subcommand("grow").has_value());
}

TEST_CASE("eta ladders") {
  const auto decades = parse_eta_ladder("1e-2..1e-6");
  REQUIRE(decades.size() == 5);
  const double expect[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  for (int i = 0; i < 5; ++i) CHECK(decades[i] == expect[i]);
  const auto up = parse_eta_ladder("5e-6..5e-4");
  REQUIRE(up.size() == 3);
  CHECK(up[1] == 5e-5);
  const auto list = parse_eta_ladder("0.01, 3e-4,1e-6");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 3e-4);
  CHECK_THROWS_AS(parse_eta_ladder("1e-2..x"), ConfigError);
  CHECK_THROWS_AS(parse_eta_ladder("1e-2..3e-5"), ConfigError);
  CHECK_THROWS_AS(parse_eta_ladder("-1e-2"), ConfigError);
  CHECK_THROWS_AS(parse_eta_ladder(""), ConfigError);
}

TEST_CASE("shortest round-trip numbers") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-6) == "1e-06");
  CHECK(format_number(2.0) == "2");
  const double third = 1.0 / 3;
  CHECK(std::stod(format_number(third)) == third);
}

TEST_CASE("configuration validation") {
  auto c = config_for(Subcommand::growth_scan);
  c.k_max = 2;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.k_max = 3;
  CHECK_NOTHROW(validate(c));
  c.tol = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);

  auto a = config_for(Subcommand::assemble);
  a.k = 2;
  a.eta = 0.005;
  CHECK_THROWS_AS(validate(a), ConfigError);
  a.eta = 1e-4;
  CHECK_NOTHROW(validate(a));
  a.flattened = {3};
  CHECK_THROWS_AS(validate(a), ConfigError);

  auto n = config_for(Subcommand::neck_sweep);
  n.C = 0.0;
  CHECK_THROWS_AS(validate(n), ConfigError);

  auto v = config_for(Subcommand::verify_bounds);
  v.grid_n = 32;
  CHECK_THROWS_AS(validate(v), ConfigError);

  std::ostringstream out, err;
  CHECK(run(c, out, err) == kUsageError);
  CHECK(out.str().empty());
  CHECK(err.str().find("tol") != std::string::npos);
}

TEST_CASE("verify-bounds report") {
  auto c = config_for(Subcommand::verify_bounds);
  c.k = 4;
  const auto r = build_report(c);
  CHECK(r.exit_code == kPass);
  CHECK(r.failed_checks.empty());
  CHECK(r.text.rfind("# minsurf 0.1.0 verify-bounds", 0) == 0);
  CHECK(r.text.find("k,quantity,sampled_sup,paper_bound,margin") != std::string::npos);
  std::istringstream lines(r.text);
  int rows = 0;
  for (std::string line; std::getline(lines, line);)
    if (line.rfind("4,", 0) == 0) ++rows;
  CHECK(rows == 3);
  CHECK(r.text.find("# check bounds_hold: pass") != std::string::npos);
}

TEST_CASE("chart-geometry report in json") {
  auto c = config_for(Subcommand::chart_geometry);
  c.k = 2;
  c.samples = 20;
  c.format = Format::json;
  const auto r = build_report(c);
  CHECK(r.exit_code == kPass);
  const auto doc = nlohmann::json::parse(r.text);
  CHECK(doc["subcommand"] == "chart-geometry");
  CHECK(doc["samples"].size() == 20);
  CHECK(doc["double_points"].size() == 2);
  CHECK(doc["checks"]["curvature_oracle"]["pass"] == true);
  CHECK(doc["status"] == "pass");
}

TEST_CASE("neck-sweep report") {
  auto c = config_for(Subcommand::neck_sweep);
  c.eta_ladder = "1e-3..1e-5";
  c.r = 0.05;
  c.format = Format::json;
  const auto r = build_report(c);
  const auto doc = nlohmann::json::parse(r.text);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["checks"]["monotone_in_eta"]["pass"] == true);
  CHECK(doc["parameters"]["necks"].size() == 3);
}

TEST_CASE("assemble: repeated reports are byte-identical and flag nothing at k = 1") {
  auto c = config_for(Subcommand::assemble);
  c.k = 1;
  const auto a = build_report(c);
  const auto b = build_report(c);
  CHECK(a.text == b.text);
  CHECK(a.exit_code == kPass);
  CHECK(a.text.find("# check gauss_bonnet: pass") != std::string::npos);
  CHECK(a.text.find("# neck: k=1 j=1") != std::string::npos);
}

TEST_CASE("growth-scan json carries the fitted slope") {
  auto c = config_for(Subcommand::growth_scan);
  c.k_max = 3;
  c.format = Format::json;
  const auto r = build_report(c);
  const auto doc = nlohmann::json::parse(r.text);
  CHECK(doc.contains("slope"));
  CHECK(doc["slope"].get<double>() > 0.0);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["complete"] == true);
  CHECK(doc["checks"].contains("growth_slope"));
  CHECK_FALSE(doc["checks"].contains("uniformity"));
}

TEST_CASE("output and plot files") {
  const fs::path dir = fs::temp_directory_path() / "minsurf_report_test";
  fs::remove_all(dir);
  auto c = config_for(Subcommand::verify_bounds);
  c.k = 1;
  c.k_max = 3;
  c.out_path = (dir / "missing" / "report.csv").string();
  std::ostringstream out, err;
  CHECK(run(c, out, err) == kUsageError);
  CHECK(err.str().find("cannot write") != std::string::npos);

  fs::create_directories(dir);
  c.out_path = (dir / "report.csv").string();
  c.plot_dir = (dir / "plots").string();
  std::ostringstream out2, err2;
  CHECK(run(c, out2, err2) == kPass);
  CHECK(out2.str().empty());
  CHECK(slurp(c.out_path) == build_report(c).text);
  std::size_t dat = 0;
  for (const auto& e : fs::directory_iterator(c.plot_dir)) {
    if (e.path().extension() == ".dat") ++dat;
    CHECK(fs::file_size(e.path()) > 0);
  }
  CHECK(dat > 0);
  fs::remove_all(dir);
}
