#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "json.hpp"

#include "minsurf/minsurf.h"

namespace msfcli {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEightPi = 8.0 * kPi;

using json = nlohmann::ordered_json;
using Cell = std::variant<long long, double, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Cell>>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

struct Document {
  Fields parameters;
  std::vector<Fields> resolved;  // per-neck effective parameters
  std::vector<Table> tables;
  Fields summary;
  std::vector<Check> checks;
  std::vector<PlotSeries> plots;
};

struct ApiFailure {
  msf_status status;
  std::string message;
};

void check(msf_status status) {
  if (status != MSF_OK) throw ApiFailure{status, msf_last_error()};
}

struct FamilyDeleter {
  void operator()(msf_family* f) const { msf_family_destroy(f); }
};
struct LedgerDeleter {
  void operator()(msf_ledger* l) const { msf_ledger_destroy(l); }
};
struct GrowthDeleter {
  void operator()(msf_growth* g) const { msf_growth_destroy(g); }
};
using FamilyPtr = std::unique_ptr<msf_family, FamilyDeleter>;
using LedgerPtr = std::unique_ptr<msf_ledger, LedgerDeleter>;
using GrowthPtr = std::unique_ptr<msf_growth, GrowthDeleter>;

FamilyPtr make_family(int k) {
  msf_family* raw = nullptr;
  check(msf_family_create(k, &raw));
  return FamilyPtr(raw);
}

const char* quantity_name(msf_quantity q) {
  switch (q) {
    case MSF_QUANTITY_P: return "p";
    case MSF_QUANTITY_DP: return "dp";
    case MSF_QUANTITY_DDP: return "ddp";
  }
  return "?";
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

json cell_json(const Cell& c) {
  struct {
    json operator()(long long v) const { return v; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(format_number(v)); }
    json operator()(bool v) const { return v; }
    json operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string render_csv(const Document& doc, std::string_view subcommand) {
  std::ostringstream os;
  os << "# minsurf " << msf_version() << ' ' << subcommand << '\n';
  for (const auto& [key, value] : doc.parameters) os << "# " << key << " = " << cell_text(value) << '\n';
  for (const auto& fields : doc.resolved) {
    os << "# neck:";
    for (const auto& [key, value] : fields) os << ' ' << key << '=' << cell_text(value);
    os << '\n';
  }
  const bool named = doc.tables.size() > 1;
  for (std::size_t t = 0; t < doc.tables.size(); ++t) {
    const Table& table = doc.tables[t];
    if (t) os << '\n';
    if (named) os << "# table: " << table.name << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
      os << '\n';
    }
  }
  for (const auto& [key, value] : doc.summary) os << "# " << key << " = " << cell_text(value) << '\n';
  for (const auto& c : doc.checks)
    os << "# check " << c.name << ": " << (c.pass ? "pass" : "fail") << " (" << c.detail << ")\n";
  return os.str();
}

std::string render_json(const Document& doc, std::string_view subcommand) {
  json root;
  root["tool"] = "minsurf";
  root["version"] = msf_version();
  root["subcommand"] = std::string(subcommand);
  json params = json::object();
  for (const auto& [key, value] : doc.parameters) params[key] = cell_json(value);
  if (!doc.resolved.empty()) {
    json necks = json::array();
    for (const auto& fields : doc.resolved) {
      json n = json::object();
      for (const auto& [key, value] : fields) n[key] = cell_json(value);
      necks.push_back(std::move(n));
    }
    params["necks"] = std::move(necks);
  }
  root["parameters"] = std::move(params);
  for (const auto& table : doc.tables) {
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r = json::object();
      for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = cell_json(row[c]);
      rows.push_back(std::move(r));
    }
    root[table.name] = std::move(rows);
  }
  for (const auto& [key, value] : doc.summary) root[key] = cell_json(value);
  json checks = json::object();
  bool pass = true;
  for (const auto& c : doc.checks) {
    checks[c.name] = {{"pass", c.pass}, {"detail", c.detail}};
    pass = pass && c.pass;
  }
  root["checks"] = std::move(checks);
  root["status"] = pass ? "pass" : "fail";
  return root.dump(2) + "\n";
}

msf_assembly_params assembly_params(const RunConfig& config) {
  msf_assembly_params p;
  msf_assembly_params_default(&p);
  p.tol = config.tol;
  p.eta = config.eta.value_or(0.0);
  p.r = config.r.value_or(0.0);
  p.flattened = config.flattened.empty() ? nullptr : config.flattened.data();
  p.n_flattened = config.flattened.size();
  p.parallel = config.parallel ? 1 : 0;
  return p;
}

void add_assembly_parameters(Document& doc, const RunConfig& config) {
  doc.parameters.emplace_back("tol", config.tol);
  doc.parameters.emplace_back("eta", config.eta ? Cell{*config.eta} : Cell{std::string("default")});
  doc.parameters.emplace_back("r", config.r ? Cell{*config.r} : Cell{std::string("default")});
  doc.parameters.emplace_back("eta_rule", std::string("min(1/(200k), min(1,C^2) r^2/100)"));
  doc.parameters.emplace_back("r_rule", std::string("min gap to neighbours, 0 and 1/4, over 4"));
  doc.parameters.emplace_back("flattened", join_ints(config.flattened));
  doc.parameters.emplace_back("max_cells", static_cast<long long>(1) << 22);
}

std::vector<Fields> resolved_necks(const msf_ledger* ledger, int k) {
  std::vector<Fields> out;
  const std::size_t n = msf_ledger_neck_count(ledger);
  for (std::size_t i = 0; i < n; ++i) {
    msf_neck_record rec;
    check(msf_ledger_neck(ledger, i, &rec));
    out.push_back({{"k", static_cast<long long>(k)},
                   {"j", static_cast<long long>(rec.j)},
                   {"u0", rec.u0},
                   {"C", rec.slope},
                   {"eta", rec.eta},
                   {"r", rec.r},
                   {"rho", rec.rho}});
  }
  return out;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string describe(double value, std::string_view relation, double limit) {
  return format_number(value) + " " + std::string(relation) + " " + format_number(limit);
}

// ---- subcommands ----------------------------------------------------------

Document verify_bounds(const RunConfig& config) {
  Document doc;
  const int k_last = config.k_max.value_or(config.k);
  doc.parameters = {{"k", static_cast<long long>(config.k)},
                    {"k_last", static_cast<long long>(k_last)},
                    {"grid_n", static_cast<long long>(config.grid_n)},
                    {"boundary_samples", static_cast<long long>(8 * config.grid_n)}};
  Table table{"rows", {"k", "quantity", "sampled_sup", "paper_bound", "margin"}, {}};
  PlotSeries sups[3], bounds[3];
  bool ok = true;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = config.k; k <= k_last; ++k) {
    FamilyPtr family = make_family(k);
    msf_bound_row rows[3];
    check(msf_sup_bounds(family.get(), config.grid_n, rows));
    for (int q = 0; q < 3; ++q) {
      const msf_bound_row& row = rows[q];
      table.rows.push_back({static_cast<long long>(row.k), std::string(quantity_name(row.quantity)),
                            row.sampled_sup, row.paper_bound, row.margin});
      ok = ok && !row.violated;
      worst = std::min(worst, row.margin);
      sups[q].points.emplace_back(k, row.sampled_sup);
      bounds[q].points.emplace_back(k, row.paper_bound);
    }
  }
  doc.tables.push_back(std::move(table));
  doc.summary.emplace_back("min_margin", worst);
  doc.checks.push_back({"bounds_hold", ok, "min margin " + describe(worst, ">", 0.0)});
  for (int q = 0; q < 3; ++q) {
    const std::string name = quantity_name(static_cast<msf_quantity>(q));
    sups[q].name = "sup_" + name + "_vs_k";
    bounds[q].name = "bound_" + name + "_vs_k";
    doc.plots.push_back(std::move(sups[q]));
    doc.plots.push_back(std::move(bounds[q]));
  }
  return doc;
}

Document chart_geometry(const RunConfig& config) {
  constexpr double kFdTol = 1e-6, kSlopeTol = 1e-4;
  const int k = config.k;
  Document doc;
  doc.parameters = {{"k", static_cast<long long>(k)},
                    {"samples", static_cast<long long>(config.samples)},
                    {"seed", static_cast<long long>(config.seed)},
                    {"fd_step", std::string("0.02*min(|z|,1/(3k))")},
                    {"fd_rel_tol", kFdTol},
                    {"slope_offset", 1e-5},
                    {"slope_rel_tol", kSlopeTol}};
  FamilyPtr family = make_family(k);

  Table samples{"samples", {"x", "y", "lambda", "K", "K_fd", "rel_err", "A2"}, {}};
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_fd = 0.0;
  while (static_cast<int>(samples.rows.size()) < config.samples) {
    const double rad = 0.5 * std::sqrt(unit(rng));
    const double th = 2.0 * kPi * unit(rng);
    if (rad < 1e-6) continue;
    const msf_complex z{rad * std::cos(th), rad * std::sin(th)};
    msf_chart_jet jet;
    msf_geom_sample g;
    check(msf_family_chart_jet(family.get(), z, &jet));
    check(msf_geom_from_jet(&jet, &g));
    double K_fd = 0.0;
    check(msf_family_curvature_fd(family.get(), z, 0.02 * std::min(rad, 1.0 / (3.0 * k)), &K_fd));
    const double err = relative(K_fd, g.K);
    worst_fd = std::max(worst_fd, err);
    samples.rows.push_back({z.re, z.im, g.lambda, g.K, K_fd, err, g.A2});
  }

  Table points{"double_points",
               {"j", "u0", "slope", "measured_slope", "measured_rel_dev", "paper_slope",
                "paper_rel_dev"},
               {}};
  std::vector<msf_double_point> dps(static_cast<std::size_t>(k));
  std::size_t count = 0;
  check(msf_double_points(family.get(), dps.data(), dps.size(), &count));
  double worst_slope = 0.0, worst_paper = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& d = dps[i];
    const double dev = relative(d.measured_slope, d.slope);
    const double paper_dev = relative(d.paper_slope, std::abs(d.slope));
    worst_slope = std::max(worst_slope, dev);
    worst_paper = std::max(worst_paper, paper_dev);
    points.rows.push_back({static_cast<long long>(d.j), d.u0, d.slope, d.measured_slope, dev,
                           d.paper_slope, paper_dev});
  }
  doc.tables.push_back(std::move(samples));
  doc.tables.push_back(std::move(points));

  PlotSeries K_axis{"K_real_axis", {}}, lambda_axis{"lambda_real_axis", {}};
  for (int i = 1; i <= 200; ++i) {
    const double x = 0.5 * i / 200.0;
    msf_chart_jet jet;
    msf_geom_sample g;
    check(msf_family_chart_jet(family.get(), {x, 0.0}, &jet));
    check(msf_geom_from_jet(&jet, &g));
    K_axis.points.emplace_back(x, g.K);
    lambda_axis.points.emplace_back(x, g.lambda);
  }
  doc.plots.push_back(std::move(K_axis));
  doc.plots.push_back(std::move(lambda_axis));

  doc.summary = {{"max_fd_rel_err", worst_fd},
                 {"max_slope_rel_dev", worst_slope},
                 {"max_paper_slope_rel_dev", worst_paper}};
  doc.checks.push_back({"curvature_oracle", worst_fd <= kFdTol, describe(worst_fd, "<=", kFdTol)});
  doc.checks.push_back({"tangent_slopes", worst_slope <= kSlopeTol,
                        describe(worst_slope, "<=", kSlopeTol)});
  return doc;
}

Document neck_sweep(const RunConfig& config) {
  const double r = config.r.value_or(0.05);
  const std::vector<double> ladder = parse_eta_ladder(config.eta_ladder);
  Document doc;
  doc.parameters = {{"u0", config.u0}, {"C", config.C}, {"r", r},
                    {"eta_ladder", config.eta_ladder}, {"tol", config.tol}};
  Table table{"rows", {"eta", "mass_low", "mass_high"}, {}};
  PlotSeries low{"mass_low_vs_eta", {}}, high{"mass_high_vs_eta", {}};
  std::vector<std::pair<double, msf_neck_mass>> results;
  for (double eta : ladder) {
    const msf_neck_params neck{config.u0, config.C, eta, r};
    msf_neck_mass m;
    check(msf_neck_curvature_mass(&neck, config.tol, &m));
    doc.resolved.push_back({{"eta", eta},
                            {"meets_ball", m.meets_ball != 0},
                            {"inscribed", m.inscribed_found != 0},
                            {"s_in_low", m.inscribed_inner},
                            {"s_out_low", m.inscribed_outer},
                            {"s_in_high", m.circumscribed_inner},
                            {"s_out_high", m.circumscribed_outer}});
    table.rows.push_back({eta, m.low, m.high});
    low.points.emplace_back(eta, m.low);
    high.points.emplace_back(eta, m.high);
    results.emplace_back(eta, m);
  }
  doc.tables.push_back(std::move(table));
  doc.plots.push_back(std::move(low));
  doc.plots.push_back(std::move(high));

  std::vector<std::pair<double, msf_neck_mass>> by_eta = results;
  std::stable_sort(by_eta.begin(), by_eta.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  bool monotone = true;
  for (std::size_t i = 1; i < by_eta.size(); ++i) {
    monotone = monotone && by_eta[i].second.low >= by_eta[i - 1].second.low &&
               by_eta[i].second.high >= by_eta[i - 1].second.high;
  }
  const msf_neck_mass& last = results.back().second;
  const double gap = std::max({0.0, last.low - kEightPi, kEightPi - last.high});
  doc.summary = {{"final_mass_low", last.low},
                 {"final_mass_high", last.high},
                 {"handle_mass", kEightPi},
                 {"final_gap_relative", gap / kEightPi}};
  doc.checks.push_back({"monotone_in_eta", monotone, "mass non-decreasing as eta decreases"});
  doc.checks.push_back({"final_handle_mass", gap <= 0.01 * kEightPi,
                        describe(gap / kEightPi, "<=", 0.01)});
  return doc;
}

Fields ledger_row_fields(const msf_ledger_summary& s) {
  return {{"k", static_cast<long long>(s.k)},
          {"necks", static_cast<long long>(s.necks)},
          {"genus", static_cast<long long>(s.genus)},
          {"chi", static_cast<long long>(s.chi)},
          {"area_unsmoothed", s.area_unsmoothed},
          {"area_immersed", s.area_immersed},
          {"area_necks", s.area_necks},
          {"area_total", s.area_total},
          {"intA2_unsmoothed", s.intA2_unsmoothed},
          {"intA2_immersed", s.intA2_immersed},
          {"intA2_necks_low", s.intA2_necks_low},
          {"intA2_necks_high", s.intA2_necks_high},
          {"A2_low", s.total_A2_low},
          {"A2_mid", s.total_A2_mid},
          {"A2_high", s.total_A2_high},
          {"predicted_A2", s.predicted_A2},
          {"printed_identity_A2", s.printed_identity_A2},
          {"combined_identity_A2", s.combined_identity_A2},
          {"boundary_length", s.boundary_length},
          {"int_kappa", s.int_kappa},
          {"gb_residual", s.gb_residual},
          {"gb_tolerance", s.gb_tolerance},
          {"gb_closure", s.gb_closure},
          {"seam_kappa", s.seam_kappa},
          {"chart_gb_residual", s.chart_gb_residual},
          {"chart_gb_error", s.chart_gb_error},
          {"quad_error", s.quad_error},
          {"bracket_slack", s.bracket_slack},
          {"bracket_consistent", s.bracket_consistent != 0}};
}

Table fields_table(std::string name, const std::vector<Fields>& records) {
  Table t{std::move(name), {}, {}};
  if (records.empty()) return t;
  for (const auto& [key, value] : records.front()) t.columns.push_back(key);
  for (const auto& rec : records) {
    std::vector<Cell> row;
    for (const auto& kv : rec) row.push_back(kv.second);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Document assemble(const RunConfig& config) {
  Document doc;
  doc.parameters.emplace_back("k", static_cast<long long>(config.k));
  add_assembly_parameters(doc, config);
  const msf_assembly_params params = assembly_params(config);
  msf_ledger* raw = nullptr;
  check(msf_assemble(config.k, &params, &raw));
  LedgerPtr ledger(raw);
  msf_ledger_summary s;
  check(msf_ledger_summary_get(ledger.get(), &s));
  doc.resolved = resolved_necks(ledger.get(), config.k);

  std::vector<Fields> necks;
  PlotSeries low{"neck_mass_low_vs_u0", {}}, high{"neck_mass_high_vs_u0", {}};
  for (std::size_t i = 0; i < msf_ledger_neck_count(ledger.get()); ++i) {
    msf_neck_record n;
    check(msf_ledger_neck(ledger.get(), i, &n));
    necks.push_back({{"j", static_cast<long long>(n.j)},
                     {"u0", n.u0},
                     {"slope", n.slope},
                     {"eta", n.eta},
                     {"r", n.r},
                     {"rho", n.rho},
                     {"mass_low", n.mass_low},
                     {"mass_high", n.mass_high},
                     {"area_low", n.area_low},
                     {"area_high", n.area_high},
                     {"excised_A2", n.excised_A2},
                     {"excised_area", n.excised_area},
                     {"seam_kappa", n.seam_kappa}});
    low.points.emplace_back(n.u0, n.mass_low);
    high.points.emplace_back(n.u0, n.mass_high);
  }
  doc.tables.push_back(fields_table("ledger", {ledger_row_fields(s)}));
  Table neck_table = fields_table("necks", necks);
  if (neck_table.columns.empty())
    neck_table.columns = {"j", "u0", "slope", "eta", "r", "rho", "mass_low", "mass_high",
                          "area_low", "area_high", "excised_A2", "excised_area", "seam_kappa"};
  doc.tables.push_back(std::move(neck_table));
  doc.plots.push_back(std::move(low));
  doc.plots.push_back(std::move(high));

  doc.checks.push_back({"bracket_consistent", s.bracket_consistent != 0,
                        "A2 bracket [" + format_number(s.total_A2_low) + ", " +
                            format_number(s.total_A2_high) + "] vs predicted " +
                            format_number(s.predicted_A2) + " slack " +
                            format_number(s.bracket_slack)});
  doc.checks.push_back({"gauss_bonnet", s.gb_residual <= s.gb_tolerance,
                        describe(s.gb_residual, "<=", s.gb_tolerance)});
  return doc;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::abs(*lo);
}

Document growth_scan(const RunConfig& config, int& exit_code) {
  const int k_max = config.k_max.value_or(6);
  Document doc;
  doc.parameters.emplace_back("k_max", static_cast<long long>(k_max));
  add_assembly_parameters(doc, config);
  const msf_assembly_params params = assembly_params(config);
  msf_growth* raw = nullptr;
  const msf_status status = msf_growth_scan(k_max, &params, &raw);
  if (!raw) check(status);
  GrowthPtr scan(raw);

  Table table{"rows",
              {"k", "genus", "area_total", "A2_low", "A2_mid", "A2_high", "predicted_A2",
               "boundary_length", "int_kappa", "gb_residual"},
              {}};
  PlotSeries mid{"A2_mid_vs_genus", {}}, lowp{"A2_low_vs_genus", {}}, highp{"A2_high_vs_genus", {}},
      pred{"predicted_A2_vs_genus", {}}, area{"area_total_vs_k", {}},
      length{"boundary_length_vs_k", {}}, kappa{"int_kappa_vs_k", {}};
  std::vector<double> lengths, kappas;
  bool consistent = true;
  const std::size_t n = msf_growth_row_count(scan.get());
  for (std::size_t i = 0; i < n; ++i) {
    msf_growth_row row;
    check(msf_growth_row_get(scan.get(), i, &row));
    table.rows.push_back({static_cast<long long>(row.k), static_cast<long long>(row.genus),
                          row.area_total, row.total_A2_low, row.total_A2_mid, row.total_A2_high,
                          row.predicted_A2, row.boundary_length, row.int_kappa, row.gb_residual});
    const auto resolved = resolved_necks(msf_growth_ledger(scan.get(), i), row.k);
    doc.resolved.insert(doc.resolved.end(), resolved.begin(), resolved.end());
    consistent = consistent && row.bracket_consistent;
    lengths.push_back(row.boundary_length);
    kappas.push_back(std::abs(row.int_kappa));
    mid.points.emplace_back(row.genus, row.total_A2_mid);
    lowp.points.emplace_back(row.genus, row.total_A2_low);
    highp.points.emplace_back(row.genus, row.total_A2_high);
    pred.points.emplace_back(row.genus, row.predicted_A2);
    area.points.emplace_back(row.k, row.area_total);
    length.points.emplace_back(row.k, row.boundary_length);
    kappa.points.emplace_back(row.k, row.int_kappa);
  }
  doc.tables.push_back(std::move(table));
  for (auto* p : {&mid, &lowp, &highp, &pred, &area, &length, &kappa}) doc.plots.push_back(std::move(*p));

  msf_growth_summary g;
  check(msf_growth_summary_get(scan.get(), &g));
  doc.summary = {{"slope", g.slope},
                 {"intercept", g.intercept},
                 {"slope_over_8pi", g.slope_over_8pi},
                 {"area_sup", g.area_sup},
                 {"boundary_length_spread", spread(lengths)},
                 {"int_kappa_spread", spread(kappas)},
                 {"complete", g.complete != 0}};
  if (!g.complete) {
    doc.summary.emplace_back("failure", std::string(msf_growth_failure(scan.get())));
    exit_code = status == MSF_ERR_NONCONVERGENCE ? kNonConvergence : kUsageError;
    return doc;
  }
  doc.checks.push_back({"growth_slope", std::abs(g.slope_over_8pi - 1.0) <= 0.05,
                        "slope/(8 pi) = " + format_number(g.slope_over_8pi) + " in [0.95, 1.05]"});
  doc.checks.push_back({"area_bound", g.area_sup < 0.6, describe(g.area_sup, "<", 0.6)});
  doc.checks.push_back({"bracket_consistent", consistent, "every row"});
  return doc;
}

}  // namespace

std::string_view to_string(Subcommand s) noexcept {
  switch (s) {
    case Subcommand::verify_bounds: return "verify-bounds";
    case Subcommand::chart_geometry: return "chart-geometry";
    case Subcommand::neck_sweep: return "neck-sweep";
    case Subcommand::assemble: return "assemble";
    case Subcommand::growth_scan: return "growth-scan";
  }
  return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) noexcept {
  for (auto s : {Subcommand::verify_bounds, Subcommand::chart_geometry, Subcommand::neck_sweep,
                 Subcommand::assemble, Subcommand::growth_scan})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

double parse_real(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::vector<double> parse_eta_ladder(std::string_view text) {
  std::vector<double> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    std::string_view a_text = text.substr(0, dots), b_text = text.substr(dots + 2);
    while (!a_text.empty() && a_text.front() == ' ') a_text.remove_prefix(1);
    const double a = parse_real(a_text), b = parse_real(b_text);
    if (!(a > 0.0 && b > 0.0)) throw ConfigError("eta ladder ends must be positive");
    const double decades = std::log10(a / b);
    const long n = std::lround(decades);
    if (std::abs(decades - static_cast<double>(n)) > 1e-9)
      throw ConfigError("eta ladder ends must differ by whole decades");
    // step the decimal exponent so every rung is the correctly rounded literal
    std::string mantissa(a_text);
    int exponent = 0;
    if (const auto e = a_text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = std::string(a_text.substr(0, e));
      exponent = static_cast<int>(parse_real(a_text.substr(e + 1)));
    }
    const int step = n >= 0 ? -1 : 1;
    for (long i = 0; i <= std::labs(n); ++i)
      out.push_back(parse_real(mantissa + "e" + std::to_string(exponent + step * static_cast<int>(i))));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t comma = std::min(text.find(',', start), text.size());
      out.push_back(parse_real(text.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  for (double eta : out)
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta values must be positive");
  return out;
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ConfigError("tol must be positive");
  if (c.r && !(*c.r > 0.0 && std::isfinite(*c.r))) throw ConfigError("r must be positive");
  const auto check_eta = [&](int level) {
    if (!c.eta) return;
    if (!(*c.eta > 0.0) || !(*c.eta < 1.0 / (100.0 * level)))
      throw ConfigError("eta must lie in (0, 1/(100k)) for k = " + std::to_string(level));
  };
  switch (c.subcommand) {
    case Subcommand::verify_bounds:
      if (c.k < 1) throw ConfigError("k must be >= 1");
      if (c.k_max && *c.k_max < c.k) throw ConfigError("k-max must be >= k");
      if (c.grid_n < 64) throw ConfigError("grid-n must be >= 64");
      break;
    case Subcommand::chart_geometry:
      if (c.k < 1) throw ConfigError("k must be >= 1");
      if (c.samples < 1) throw ConfigError("samples must be >= 1");
      break;
    case Subcommand::neck_sweep:
      if (!std::isfinite(c.C) || c.C == 0.0) throw ConfigError("C must be finite and nonzero");
      if (!std::isfinite(c.u0)) throw ConfigError("u0 must be finite");
      parse_eta_ladder(c.eta_ladder);
      break;
    case Subcommand::assemble:
      if (c.k < 1) throw ConfigError("k must be >= 1");
      check_eta(c.k);
      for (int j : c.flattened)
        if (j < 1 || j > c.k) throw ConfigError("flattened double points must lie in 1..k");
      break;
    case Subcommand::growth_scan: {
      const int k_max = c.k_max.value_or(6);
      if (k_max < 3) throw ConfigError("k-max must be >= 3");
      check_eta(k_max);
      for (int j : c.flattened)
        if (j < 1) throw ConfigError("flattened double points must be >= 1");
      break;
    }
  }
}

Report build_report(const RunConfig& config) {
  validate(config);
  Report report;
  Document doc;
  try {
    switch (config.subcommand) {
      case Subcommand::verify_bounds: doc = verify_bounds(config); break;
      case Subcommand::chart_geometry: doc = chart_geometry(config); break;
      case Subcommand::neck_sweep: doc = neck_sweep(config); break;
      case Subcommand::assemble: doc = assemble(config); break;
      case Subcommand::growth_scan: doc = growth_scan(config, report.exit_code); break;
    }
  } catch (const ApiFailure& f) {
    report.exit_code = f.status == MSF_ERR_NONCONVERGENCE ? kNonConvergence : kUsageError;
    report.failed_checks.push_back(std::string(msf_status_string(f.status)) + ": " + f.message);
    return report;
  }
  doc.parameters.insert(doc.parameters.begin(),
                        {"format", std::string(config.format == Format::csv ? "csv" : "json")});
  const std::string_view name = to_string(config.subcommand);
  report.text = config.format == Format::csv ? render_csv(doc, name) : render_json(doc, name);
  for (const auto& c : doc.checks)
    if (!c.pass) report.failed_checks.push_back(c.name + ": " + c.detail);
  if (report.exit_code == kPass && !report.failed_checks.empty()) report.exit_code = kCheckFailed;
  if (report.exit_code != kPass && report.failed_checks.empty()) {
    for (const auto& [key, value] : doc.summary)
      if (key == "failure") report.failed_checks.push_back(cell_text(value));
  }
  report.plots = std::move(doc.plots);
  return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = build_report(config);
  } catch (const ConfigError& e) {
    err << "minsurf: invalid configuration: " << e.what() << '\n';
    return kUsageError;
  }
  if (!report.text.empty()) {
    if (config.out_path.empty()) {
      out << report.text;
    } else {
      std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
      file << report.text;
      file.close();
      if (!file) {
        err << "minsurf: cannot write report to " << config.out_path << '\n';
        return kUsageError;
      }
    }
  }
  if (!config.plot_dir.empty() && !report.plots.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.plot_dir, ec);
    for (const auto& series : report.plots) {
      const auto path = std::filesystem::path(config.plot_dir) / (series.name + ".dat");
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      for (const auto& [x, y] : series.points) file << format_number(x) << ' ' << format_number(y) << '\n';
      file.close();
      if (!file) {
        err << "minsurf: cannot write plot data to " << path.string() << '\n';
        return kUsageError;
      }
    }
  }
  for (const auto& f : report.failed_checks) err << "minsurf: " << f << '\n';
  return report.exit_code;
}

}  // namespace msfcli
