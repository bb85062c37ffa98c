#include "surface_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "holo_geom.hpp"

namespace minsurf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDiskRadius = 0.5;
constexpr double kImageRadius = kDiskRadius * kDiskRadius;

double circle_max_distance(const RootFamily& family, cplx center, double rho, int samples) {
  const cplx target{center.real() * center.real(), 0.0};
  double worst = 0.0;
  for (int m = 0; m < samples; ++m) {
    const cplx z = center + std::polar(rho, 2.0 * kPi * m / samples);
    const PolyJet pj = eval_jet(family, z);
    const double d = std::sqrt(std::norm(z * z - target) + std::norm(pj.p));
    worst = std::max(worst, d);
  }
  return worst;
}

struct NeckWork {
  NeckRecord record;
  double error = 0.0;
};

template <class F>
auto run_tasks(std::size_t n, bool parallel, F&& task) {
  using R = decltype(task(std::size_t{0}));
  std::vector<R> out;
  out.reserve(n);
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(task(i));
    return out;
  }
  std::vector<std::future<R>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) futures.push_back(std::async(std::launch::async, task, i));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

double default_neck_radius(const RootFamily& family, int j) {
  const double u0 = std::pow(family.root(j), 2);
  const double below = j == 1 ? 0.0 : std::pow(family.root(j - 1), 2);
  double gap = std::min(u0 - below, kImageRadius - u0);
  if (j < family.k()) gap = std::min(gap, std::pow(family.root(j + 1), 2) - u0);
  return 0.25 * gap;
}

double default_neck_eta(int k, double slope, double r) {
  const double c2 = std::min(1.0, slope * slope);
  return std::min(1.0 / (200.0 * k), c2 * r * r / 100.0);
}

double exclusion_radius(const RootFamily& family, int j, double r) {
  if (!(r > 0.0)) throw InvalidArgument("neck ball radius must be positive");
  const double a = family.root(j);
  const PolyJet pj = eval_jet(family, cplx{a, 0.0});
  const double linear = r / std::sqrt(4.0 * a * a + std::norm(pj.dp));
  auto excess = [&](double rho) {
    return circle_max_distance(family, cplx{a, 0.0}, rho, 720) - r;
  };
  double hi = 2.0 * linear;
  for (int i = 0; excess(hi) <= 0.0; ++i) {
    if (i > 60) throw BracketNotFound("exclusion radius search ran out of range");
    hi *= 2.0;
  }
  boost::math::tools::eps_tolerance<double> tol(40);
  std::uintmax_t iters = 200;
  double rho = boost::math::tools::bisect(excess, 0.0, hi, tol, iters).first;

  for (int attempt = 0; attempt < 400; ++attempt) {
    const bool inside =
        circle_max_distance(family, cplx{a, 0.0}, rho, 2880) <= r &&
        circle_max_distance(family, cplx{-a, 0.0}, rho, 2880) <= r;
    if (inside) return rho;
    rho *= 1.0 - 1e-3;
    if (!(rho > std::numeric_limits<double>::min()))
      break;
  }
  throw BracketNotFound("exclusion radius underflow: image escapes the neck ball");
}

PuncturedDiskSpec preimage_exclusions(const RootFamily& family, const std::vector<int>& js,
                                      const std::vector<double>& radii) {
  if (js.size() != radii.size())
    throw InvalidArgument("one exclusion radius per double point expected");
  PuncturedDiskSpec spec;
  spec.radius = kDiskRadius;
  for (std::size_t i = 0; i < js.size(); ++i) {
    const double a = family.root(js[i]);
    spec.exclusions.push_back({cplx{a, 0.0}, radii[i]});
    spec.exclusions.push_back({cplx{-a, 0.0}, radii[i]});
  }
  spec.validate();
  return spec;
}

double CurvatureLedger::predicted_A2() const noexcept {
  return -2.0 * (2.0 * kPi * chi - int_kappa);
}

double CurvatureLedger::printed_identity_A2() const noexcept {
  return 4.0 * kPi * genus - 2.0 * kPi + int_kappa;
}

double CurvatureLedger::combined_identity_A2() const noexcept {
  return 8.0 * kPi * genus - 4.0 * kPi + 2.0 * int_kappa;
}

double CurvatureLedger::bracket_slack() const noexcept {
  return quad_error + 2.0 * std::abs(seam_kappa);
}

bool CurvatureLedger::bracket_consistent() const noexcept {
  const double p = predicted_A2();
  const double s = bracket_slack();
  return total_A2_low() <= p + s && p <= total_A2_high() + s;
}

CurvatureLedger assemble(int k, const AssemblyParams& params) {
  if (k < 0) throw InvalidArgument("assembly level k must be >= 0");
  if (!(params.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const RootFamily family = k == 0 ? RootFamily::baseline() : make_family(k);
  const double tol = params.tol;
  const std::size_t budget = params.max_cells;

  std::vector<int> smoothed;
  for (const auto& dp : double_points(family)) {
    if (std::find(params.flattened.begin(), params.flattened.end(), dp.j) ==
        params.flattened.end())
      smoothed.push_back(dp.j);
  }
  for (int j : params.flattened)
    if (j < 1 || j > k) throw InvalidArgument("flattened double point index out of range");

  const auto points = double_points(family);
  std::vector<NeckRecord> records;
  std::vector<double> radii;
  for (int j : smoothed) {
    const DoublePoint& dp = points[static_cast<std::size_t>(j - 1)];
    NeckRecord rec;
    rec.j = j;
    rec.u0 = dp.u0;
    rec.slope = dp.slope;
    rec.r = params.r.value_or(default_neck_radius(family, j));
    rec.eta = params.eta.value_or(default_neck_eta(k, dp.slope, rec.r));
    Neck{rec.u0, rec.slope, rec.eta, rec.r}.validate(k);
    rec.rho = exclusion_radius(family, j, rec.r);
    radii.push_back(rec.rho);
    records.push_back(rec);
  }
  const PuncturedDiskSpec spec = preimage_exclusions(family, smoothed, radii);

  const auto chart_mass = [&](cplx z) {
    return curvature_mass_density(family_chart_jet(family, z));
  };
  const auto chart_area = [&](cplx z) {
    return conformal_factor(family_chart_jet(family, z));
  };

  // Job 0: full-disk chart integrals. Job 1: boundary circle. Jobs 2..: necks.
  struct Piece {
    QuadratureResult a, b;
    NeckWork neck;
  };
  const std::size_t n_jobs = 2 + records.size();
  auto job = [&](std::size_t i) -> Piece {
    Piece out;
    if (i == 0) {
      out.a = integrate_disk(chart_mass, cplx{0.0, 0.0}, kDiskRadius, tol, budget);
      out.b = integrate_disk(chart_area, cplx{0.0, 0.0}, kDiskRadius, tol, budget);
    } else if (i == 1) {
      out.a = integrate_circle(
          [&](double t) {
            return kappa_ds_density(family_chart_jet(family, std::polar(kDiskRadius, t)),
                                    cplx{0.0, 0.0}, kDiskRadius);
          },
          tol);
      out.b = integrate_circle(
          [&](double t) {
            return kDiskRadius *
                   std::sqrt(conformal_factor(family_chart_jet(family, std::polar(kDiskRadius, t))));
          },
          tol);
    } else {
      NeckRecord rec = records[i - 2];
      double err = 0.0;
      const Neck neck{rec.u0, rec.slope, rec.eta, rec.r};
      rec.mass = neck_curvature_mass(neck, tol, budget);
      err += rec.mass.error_estimate;
      const double a = family.root(rec.j);
      double seam = 0.0;
      for (double centre : {a, -a}) {
        const QuadratureResult m = integrate_disk(chart_mass, cplx{centre, 0.0}, rec.rho, tol, budget);
        const QuadratureResult ar = integrate_disk(chart_area, cplx{centre, 0.0}, rec.rho, tol, budget);
        const QuadratureResult kap = integrate_circle(
            [&](double t) {
              const cplx c{centre, 0.0};
              return kappa_ds_density(family_chart_jet(family, c + std::polar(rec.rho, t)), c,
                                      rec.rho);
            },
            tol);
        rec.excised_A2 += m.value;
        rec.excised_area += ar.value;
        seam -= kap.value;  // the cut circle bounds the punctured disk from outside
        err += m.error_estimate + ar.error_estimate + kap.error_estimate;
      }
      if (rec.mass.meets_ball) {
        const NeckRegion& reg =
            rec.mass.inscribed_found ? rec.mass.region.inscribed : rec.mass.region.circumscribed;
        const QuadratureResult nb = neck_boundary_kappa(neck, reg.s_inner, reg.s_outer, tol);
        seam += nb.value;
        err += nb.error_estimate;
      }
      rec.seam_kappa = seam;
      out.neck = {rec, err};
    }
    return out;
  };
  std::vector<Piece> pieces;
  try {
    pieces = run_tasks(n_jobs, params.parallel, job);
  } catch (const NonConvergence& e) {
    throw NonConvergence("assembly k=" + std::to_string(k) + ": " + e.what(), e.partial());
  }

  CurvatureLedger L;
  L.k = k;
  L.necks = static_cast<int>(records.size());
  L.genus = L.necks;
  L.chi = 1 - 2 * L.genus;
  L.intA2_unsmoothed = pieces[0].a.value;
  L.area_unsmoothed = pieces[0].b.value;
  L.int_kappa = pieces[1].a.value;
  L.boundary_length = pieces[1].b.value;
  const double chart_err = pieces[0].a.error_estimate + pieces[1].a.error_estimate;
  L.quad_error = chart_err + pieces[0].b.error_estimate + pieces[1].b.error_estimate;
  L.chart_gb_residual = std::abs(-0.5 * L.intA2_unsmoothed + L.int_kappa - 2.0 * kPi);
  L.chart_gb_error = 0.5 * pieces[0].a.error_estimate + pieces[1].a.error_estimate;

  L.intA2_immersed = L.intA2_unsmoothed;
  L.area_immersed = L.area_unsmoothed;
  for (std::size_t i = 2; i < pieces.size(); ++i) {
    const NeckRecord& rec = pieces[i].neck.record;
    L.quad_error += pieces[i].neck.error;
    L.intA2_immersed -= rec.excised_A2;
    L.area_immersed -= rec.excised_area;
    L.intA2_necks_low += rec.mass.low;
    L.intA2_necks_high += rec.mass.high;
    L.area_necks_low += rec.mass.area_low;
    L.area_necks_high += rec.mass.area_high;
    L.seam_kappa += rec.seam_kappa;
    L.neck_records.push_back(rec);
  }
  L.area_necks = 0.5 * (L.area_necks_low + L.area_necks_high);

  const double k_mid = -0.5 * L.total_A2_mid();
  L.gb_residual = std::abs(k_mid + L.int_kappa - 2.0 * kPi * L.chi);
  L.gb_tolerance = L.quad_error + 0.25 * (L.intA2_necks_high - L.intA2_necks_low) +
                   std::abs(L.seam_kappa);
  const double k_low = -0.5 * L.total_A2_low();
  L.gb_closure = std::abs(k_low + L.int_kappa + L.seam_kappa - 2.0 * kPi * L.chi);
  return L;
}

GrowthRow growth_row(const CurvatureLedger& L) {
  GrowthRow row;
  row.k = L.k;
  row.genus = L.genus;
  row.total_A2_low = L.total_A2_low();
  row.total_A2_mid = L.total_A2_mid();
  row.total_A2_high = L.total_A2_high();
  row.area_total = L.area_total();
  row.boundary_length = L.boundary_length;
  row.int_kappa = L.int_kappa;
  row.predicted_A2 = L.predicted_A2();
  row.gb_residual = L.gb_residual;
  row.bracket_consistent = L.bracket_consistent();
  return row;
}

std::pair<double, double> least_squares(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidArgument("least squares needs at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("least squares abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

GrowthScan growth_scan(int k_max, const AssemblyParams& params) {
  if (k_max < 3) throw InvalidArgument("growth scan needs k_max >= 3");
  GrowthScan scan;
  for (int k = 1; k <= k_max; ++k) {
    try {
      scan.ledgers.push_back(assemble(k, params));
    } catch (const NonConvergence& e) {
      scan.complete = false;
      scan.nonconvergence = true;
      scan.failure = e.what();
      break;
    } catch (const Error& e) {
      scan.complete = false;
      scan.failure = "assembly k=" + std::to_string(k) + ": " + e.what();
      break;
    }
    scan.rows.push_back(growth_row(scan.ledgers.back()));
  }
  if (scan.rows.size() >= 2) {
    std::vector<double> g, a;
    for (const auto& row : scan.rows) {
      g.push_back(row.genus);
      a.push_back(row.total_A2_mid);
      scan.area_sup = std::max(scan.area_sup, row.area_total);
    }
    std::tie(scan.slope, scan.intercept) = least_squares(g, a);
    scan.slope_over_8pi = scan.slope / (8.0 * kPi);
  }
  return scan;
}

}  // namespace minsurf
