// Acceptance checks: one PASS/FAIL line per criterion, exit 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "minsurf/minsurf.h"
#include "report.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHandle = 8.0 * kPi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;
std::map<int, std::string> lines;

void verdict(int id, const char* name, bool ok, double secs, double limit, const std::string& detail) {
  const bool in_time = secs <= limit;
  const bool pass = ok && in_time;
  if (!pass) ++failures;
  char head[160];
  std::snprintf(head, sizeof head, "%s %d %s: ", pass ? "PASS" : "FAIL", id, name);
  char tail[80];
  std::snprintf(tail, sizeof tail, " [%.2f s, limit %.0f s%s]", secs, limit, in_time ? "" : ", too slow");
  lines[id] = head + detail + tail;
  std::fprintf(stderr, "  done: criterion %d (%.1f s)\n", id, secs);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

msf_complex random_in_disk(std::mt19937_64& rng, double R) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = R * std::sqrt(u(rng)), t = 2.0 * kPi * u(rng);
  return {r * std::cos(t), r * std::sin(t)};
}

void bounds() {
  const auto t0 = Clock::now();
  bool ok = true;
  double min_margin = INFINITY;
  for (int k = 1; k <= 8; ++k) {
    msf_family* f = nullptr;
    msf_bound_row rows[3];
    if (msf_family_create(k, &f) != MSF_OK || msf_sup_bounds(f, 512, rows) != MSF_OK) {
      ok = false;
    } else {
      for (const auto& r : rows) {
        ok = ok && r.margin > 0.0 && !r.violated;
        min_margin = std::min(min_margin, r.margin);
      }
    }
    msf_family_destroy(f);
  }
  verdict(1, "sup bounds k=1..8", ok, seconds_since(t0), 10, "min margin " + fmt("%.4g", min_margin));
}

void curvature_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  bool ok = true;
  for (int k = 1; k <= 8; ++k) {
    msf_family* f = nullptr;
    if (msf_family_create(k, &f) != MSF_OK) {
      ok = false;
      continue;
    }
    for (int i = 0; i < 100; ++i) {
      const msf_complex z = random_in_disk(rng, 0.5);
      msf_chart_jet jet;
      msf_geom_sample g;
      double K_fd = 0.0;
      const double h = 0.02 * std::min(std::hypot(z.re, z.im), 1.0 / (3.0 * k));
      if (msf_family_chart_jet(f, z, &jet) != MSF_OK || msf_geom_from_jet(&jet, &g) != MSF_OK ||
          msf_family_curvature_fd(f, z, h, &K_fd) != MSF_OK) {
        ok = false;
        continue;
      }
      worst = std::max(worst, relative(K_fd, g.K));
    }
    msf_family_destroy(f);
  }
  const msf_neck_params necks[] = {
      {0.0, 1.0, 1e-4, 0.05},  {0.1, 1.0 / 3, 1e-3, 0.05}, {0.2, -0.5, 1e-6, 0.01},
      {0.05, 2.0, 1e-2, 0.3}, {0.0, 0.05, 1e-5, 0.02},
  };
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& n : necks) {
    const double q = std::sqrt(n.eta);
    for (int i = 0; i < 100; ++i) {
      const double rad = q * std::exp(4.0 * u(rng) - 2.0), th = 2.0 * kPi * u(rng);
      const msf_complex s{rad * std::cos(th), rad * std::sin(th)};
      double d = rad;
      for (const auto& a : {msf_complex{q, 0}, msf_complex{-q, 0}, msf_complex{0, q}, msf_complex{0, -q}})
        d = std::min(d, std::hypot(s.re - a.re, s.im - a.im));
      msf_chart_jet jet;
      msf_geom_sample g;
      double K_fd = 0.0;
      if (msf_neck_jet(&n, s, &jet) != MSF_OK || msf_geom_from_jet(&jet, &g) != MSF_OK ||
          msf_neck_curvature_fd(&n, s, 0.02 * d, &K_fd) != MSF_OK) {
        ok = false;
        continue;
      }
      worst = std::max(worst, relative(K_fd, g.K));
    }
  }
  verdict(2, "curvature oracle G_1..G_8 + 5 necks", ok && worst <= 1e-6, seconds_since(t0), 30,
          "worst relative " + fmt("%.3g", worst) + " (tol 1e-6)");
}

void neck_mass() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  double prev = -INFINITY;
  bool monotone = true, near = false;
  for (double eta : msfcli::parse_eta_ladder("1e-2..1e-6")) {
    const msf_neck_params n{0.0, 1.0, eta, 0.05};
    msf_neck_mass m;
    if (msf_neck_curvature_mass(&n, 1e-9, &m) != MSF_OK) {
      ok = false;
      detail += " eta=" + fmt("%g", eta) + ": " + msf_last_error();
      continue;
    }
    const double mid = 0.5 * (m.low + m.high);
    monotone = monotone && mid > prev;
    prev = mid;
    if (eta == 1e-6) {
      near = m.low <= 1.01 * kHandle && m.high >= 0.99 * kHandle;
      detail = "bracket at 1e-6 [" + fmt("%.7g", m.low) + ", " + fmt("%.7g", m.high) + "]" + detail;
    }
  }
  detail += monotone ? ", monotone in eta" : ", NOT monotone in eta";
  verdict(4, "neck handle mass C=1 r=0.05", ok && near && monotone, seconds_since(t0), 120, detail);
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::abs(*lo);
}

void growth() {
  const auto t0 = Clock::now();
  msf_growth* g = nullptr;
  const msf_status st = msf_growth_scan(6, nullptr, &g);
  const double secs = seconds_since(t0);
  if (st != MSF_OK) {
    const std::string why = std::string("growth scan failed: ") + msf_last_error();
    verdict(3, "chart Gauss-Bonnet k<=6", false, secs, 120, why);
    verdict(5, "growth law k=1..6", false, secs, 900, why);
    msf_growth_destroy(g);
    return;
  }

  double worst_gb = 0.0;
  std::vector<double> area, length, kappa;
  for (size_t i = 0; i < msf_growth_row_count(g); ++i) {
    msf_ledger_summary s;
    msf_ledger_summary_get(msf_growth_ledger(g, i), &s);
    worst_gb = std::max(worst_gb, s.chart_gb_residual);
    area.push_back(s.area_total);
    length.push_back(s.boundary_length);
    kappa.push_back(std::abs(s.int_kappa));
  }
  verdict(3, "chart Gauss-Bonnet k<=6", worst_gb <= 1e-5, secs, 120,
          "worst residual " + fmt("%.3g", worst_gb) + " (tol 1e-5)");

  msf_growth_summary sum;
  msf_growth_summary_get(g, &sum);
  const bool slope_ok = std::abs(sum.slope_over_8pi - 1.0) <= 0.05;
  const double area_max = *std::max_element(area.begin(), area.end());
  bool trending = std::abs(area.back() - kPi / 8) <= 0.01 * kPi / 8;
  for (size_t i = 1; i < area.size(); ++i)
    trending = trending && std::abs(area[i] - kPi / 8) <= std::abs(area[i - 1] - kPi / 8);
  const bool area_ok = area_max < 0.6 && trending;
  const double ls = spread(length), ks = spread(kappa);
  const bool uniform = ls < 0.10 && ks < 0.10;
  std::string detail = "slope/8pi " + fmt("%.4f", sum.slope_over_8pi) + (slope_ok ? " ok" : " FAIL") +
                       "; area max " + fmt("%.4f", area_max) + " -> " + fmt("%.4f", area.back()) +
                       (area_ok ? " ok" : " FAIL") + "; boundary_length spread " +
                       fmt("%.1f%%", 100 * ls) + ", |int kappa| spread " + fmt("%.1f%%", 100 * ks) +
                       (uniform ? " ok" : " FAIL (limit 10%)");
  verdict(5, "growth law k=1..6", slope_ok && area_ok && uniform, secs, 900, detail);
  msf_growth_destroy(g);
}

void tangent_slopes() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0, paper_dev = 0.0;
  for (int k = 1; k <= 4; ++k) {
    msf_family* f = nullptr;
    std::vector<msf_double_point> pts(static_cast<size_t>(k));
    size_t count = 0;
    if (msf_family_create(k, &f) != MSF_OK ||
        msf_double_points(f, pts.data(), pts.size(), &count) != MSF_OK || count != pts.size()) {
      ok = false;
    } else {
      for (const auto& p : pts) {
        worst = std::max(worst, relative(p.measured_slope, p.slope));
        paper_dev = std::max(paper_dev, relative(p.paper_slope, p.slope));
      }
    }
    msf_family_destroy(f);
  }
  verdict(6, "tangent slopes k=1..4", ok && worst <= 1e-4, seconds_since(t0), 10,
          "worst relative " + fmt("%.3g", worst) + " (tol 1e-4); closed-product formula deviates up to " +
              fmt("%.3g", paper_dev));
}

void determinism() {
  const auto t0 = Clock::now();
  msfcli::RunConfig c;
  c.subcommand = msfcli::Subcommand::growth_scan;
  c.k_max = 4;
  bool same = false;
  std::string detail;
  try {
    const auto a = msfcli::build_report(c);
    const auto b = msfcli::build_report(c);
    same = a.text == b.text && !a.text.empty();
    detail = std::to_string(a.text.size()) + " bytes, " + (same ? "identical" : "DIFFERENT");
  } catch (const std::exception& e) {
    detail = e.what();
  }
  verdict(7, "determinism growth-scan --k-max 4", same, seconds_since(t0), 900, detail);
}

}  // namespace

int main() {
  std::printf("minsurf %s acceptance\n", msf_version());
  bounds();
  curvature_oracle();
  growth();
  neck_mass();
  tangent_slopes();
  determinism();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
