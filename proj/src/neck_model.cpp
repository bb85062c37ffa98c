#include "neck_model.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

namespace minsurf {

namespace {

ChartJet build_jet(const Neck& n, cplx s, cplx plus, cplx minus) {
  // plus = s^2 + eta, minus = s^2 - eta
  const cplx s2 = s * s;
  ChartJet jet;
  jet.z = s;
  jet.f = {n.u0 + minus / (2.0 * n.C * s), plus / (2.0 * s)};
  jet.df = {plus / (2.0 * n.C * s2), minus / (2.0 * s2)};
  jet.ddf = {-n.eta / (n.C * s2 * s), n.eta / (s2 * s)};
  return jet;
}

double smooth_step(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

/// C-infinity cutoff: 1 on [0, R/2], 0 on [R, inf).
double cutoff(double d, double radius) {
  if (d >= radius) return 0.0;
  const double half = 0.5 * radius;
  if (d <= half) return 1.0;
  const double t = (d - half) / half;
  const double a = smooth_step(1.0 - t), b = smooth_step(t);
  return a / (a + b);
}

double pointwise(NeckQuantity q, const ChartJet& jet) {
  return q == NeckQuantity::area ? conformal_factor(jet) : curvature_mass_density(jet);
}

double ball_root(const Neck& n, bool use_max) {
  const double waist = std::sqrt(n.eta);
  auto excess = [&](double rho) {
    const CircleDistance d = circle_distance_extrema(n, rho);
    return (use_max ? d.max : d.min) - n.r;
  };
  double hi = 2.0 * waist;
  for (int i = 0; excess(hi) <= 0.0; ++i) {
    if (i > 2000) throw BracketNotFound("neck ball bracket search ran out of range");
    hi *= 2.0;
  }
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iters = 400;
  const auto [a, b] = boost::math::tools::bisect(excess, waist, hi, tol, iters);
  // the lower end keeps the inscribed image inside the ball
  return use_max ? a : b;
}

}  // namespace

void Neck::validate(std::optional<int> family_k) const {
  if (!(C != 0.0) || !std::isfinite(C)) throw InvalidArgument("neck slope C must be nonzero");
  if (!(eta > 0.0)) throw InvalidArgument("neck parameter eta must be positive");
  if (!(r > 0.0)) throw InvalidArgument("neck ball radius r must be positive");
  if (family_k && *family_k >= 1 && !(eta < 1.0 / (100.0 * *family_k)))
    throw InvalidArgument("neck parameter must satisfy eta < 1/(100k)");
}

ChartJet neck_jet(const Neck& neck, cplx s) {
  if (s == cplx{0.0, 0.0}) throw InvalidArgument("s = 0 is outside the neck chart");
  const cplx s2 = s * s;
  return build_jet(neck, s, s2 + neck.eta, s2 - neck.eta);
}

ChartJet neck_jet_near(const Neck& neck, cplx anchor, cplx offset) {
  const cplx s = anchor + offset;
  if (s == cplx{0.0, 0.0}) throw InvalidArgument("s = 0 is outside the neck chart");
  const cplx a2 = anchor * anchor;
  const cplx vanishing = offset * (offset + 2.0 * anchor);
  if (std::abs(a2 + neck.eta) < std::abs(a2 - neck.eta))
    return build_jet(neck, s, vanishing, vanishing - 2.0 * neck.eta);
  return build_jet(neck, s, vanishing + 2.0 * neck.eta, vanishing);
}

double neck_residual(const Neck& neck, cplx s) {
  const cplx du = (s - neck.eta / s) / (2.0 * neck.C);
  const cplx v = (s + neck.eta / s) / 2.0;
  return std::abs((v - neck.C * du) * (v + neck.C * du) - neck.eta);
}

CircleDistance circle_distance_extrema(const Neck& n, double rho) {
  // |u - u0|^2 + |v|^2 = Q alpha + 2 eta beta cos(2 phi),  Q = rho^2 + eta^2/rho^2
  const double c2 = n.C * n.C;
  const double q = rho * rho + (n.eta / rho) * (n.eta / rho);
  const double alpha = (1.0 + c2) / (4.0 * c2);
  const double beta = std::abs(c2 - 1.0) / (4.0 * c2);
  const double base = q * alpha;
  const double swing = 2.0 * n.eta * beta;
  return {std::sqrt(std::max(base - swing, 0.0)), std::sqrt(base + swing)};
}

bool neck_meets_ball(const Neck& neck) {
  return circle_distance_extrema(neck, std::sqrt(neck.eta)).min < neck.r;
}

NeckRegionPair neck_region(const Neck& neck) {
  neck.validate();
  const CircleDistance waist = circle_distance_extrema(neck, std::sqrt(neck.eta));
  if (!(waist.min < neck.r)) throw BracketNotFound("neck does not meet its ball");
  if (!(waist.max < neck.r))
    throw BracketNotFound("neck waist circle does not fit inside its ball");
  const double b_in = ball_root(neck, true);
  const double b_out = ball_root(neck, false);
  NeckRegionPair out;
  out.inscribed = {neck.eta / b_in, b_in, BracketMode::inscribed};
  out.circumscribed = {neck.eta / b_out, b_out, BracketMode::circumscribed};
  return out;
}

QuadratureResult neck_integral(const Neck& neck, NeckQuantity quantity, double s_inner,
                               double s_outer, double tol, std::size_t max_cells) {
  neck.validate();
  const double waist = std::sqrt(neck.eta);
  const double spot = 0.4 * waist;
  const bool split = s_inner <= 0.6 * waist && s_outer >= 1.4 * waist;
  if (!split) {
    return integrate_annulus(
        [&](cplx s) { return pointwise(quantity, neck_jet(neck, s)); }, s_inner, s_outer, tol,
        max_cells);
  }

  const std::array<cplx, 4> anchors{cplx{waist, 0.0}, cplx{0.0, waist}, cplx{-waist, 0.0},
                                    cplx{0.0, -waist}};
  QuadratureResult out = integrate_annulus(
      [&](cplx s) {
        double keep = 1.0;
        for (const cplx& a : anchors) keep -= cutoff(std::abs(s - a), spot);
        if (keep <= 0.0) return 0.0;
        return keep * pointwise(quantity, neck_jet(neck, s));
      },
      s_inner, s_outer, 0.5 * tol, max_cells);
  double value = out.value;
  for (const cplx& a : anchors) {
    const QuadratureResult piece = integrate_polar(
        [&](cplx offset) {
          const double w = cutoff(std::abs(offset), spot);
          if (w == 0.0) return 0.0;
          return w * pointwise(quantity, neck_jet_near(neck, a, offset));
        },
        PolarPatch{cplx{0.0, 0.0}, spot * 1e-40, spot, RadialMap::logarithmic}, 0.125 * tol,
        max_cells);
    value += piece.value;
    out.error_estimate += piece.error_estimate;
    out.cells += piece.cells;
  }
  out.value = value;
  return out;
}

QuadratureResult neck_boundary_kappa(const Neck& neck, double s_inner, double s_outer,
                                     double tol) {
  auto circle = [&](double rho) {
    return integrate_circle(
        [&](double theta) {
          return kappa_ds_density(neck_jet(neck, std::polar(rho, theta)), cplx{0.0, 0.0}, rho);
        },
        0.5 * tol);
  };
  const QuadratureResult outer = circle(s_outer);
  const QuadratureResult inner = circle(s_inner);
  return {outer.value - inner.value, outer.error_estimate + inner.error_estimate,
          outer.cells + inner.cells};
}

NeckMass neck_curvature_mass(const Neck& neck, double tol, std::size_t max_cells) {
  neck.validate();
  NeckMass m;
  const double waist = std::sqrt(neck.eta);
  const CircleDistance wd = circle_distance_extrema(neck, waist);
  m.meets_ball = wd.min < neck.r;
  if (!m.meets_ball) return m;
  m.inscribed_found = wd.max < neck.r;

  const double b_out = ball_root(neck, false);
  m.region.circumscribed = {neck.eta / b_out, b_out, BracketMode::circumscribed};
  const double piece_tol = tol / 4.0;
  auto run = [&](NeckQuantity q, const NeckRegion& reg) {
    const QuadratureResult r = neck_integral(neck, q, reg.s_inner, reg.s_outer, piece_tol,
                                             max_cells);
    m.error_estimate += r.error_estimate;
    return r.value;
  };
  m.high = run(NeckQuantity::curvature_mass, m.region.circumscribed);
  m.area_high = run(NeckQuantity::area, m.region.circumscribed);
  if (m.inscribed_found) {
    const double b_in = ball_root(neck, true);
    m.region.inscribed = {neck.eta / b_in, b_in, BracketMode::inscribed};
    m.low = run(NeckQuantity::curvature_mass, m.region.inscribed);
    m.area_low = run(NeckQuantity::area, m.region.inscribed);
  }
  return m;
}

}  // namespace minsurf
