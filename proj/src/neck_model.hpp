#pragma once

#include <optional>

#include "holo_geom.hpp"
#include "quadrature.hpp"

namespace minsurf {

/// Smoothed node (v - C(u-u0)) (v + C(u-u0)) = eta inside the ball of radius
/// r about (u0, 0), with the global rational chart
///   u(s) = u0 + (s - eta/s) / (2C),   v(s) = (s + eta/s) / 2,   s != 0.
struct Neck {
  double u0 = 0.0;
  double C = 1.0;
  double eta = 0.0;
  double r = 0.0;

  /// Throws InvalidArgument unless C != 0, eta > 0, r > 0, and (when a
  /// family level k >= 1 is given) eta < 1/(100k).
  void validate(std::optional<int> family_k = std::nullopt) const;
};

ChartJet neck_jet(const Neck& neck, cplx s);

/// Same chart evaluated at s = anchor + offset, where anchor is one of the
/// four points with s^2 = +-eta. The vanishing factor s^2 -+ eta is formed as
/// offset * (offset + 2 anchor) so the jet stays accurate arbitrarily close
/// to the anchor.
ChartJet neck_jet_near(const Neck& neck, cplx anchor, cplx offset);

/// Defining-equation residual (v - C du)(v + C du) - eta at s, with du
/// formed directly from s.
double neck_residual(const Neck& neck, cplx s);

/// Extremes of |(u, v) - (u0, 0)| over the circle |s| = rho (closed form).
struct CircleDistance {
  double min = 0.0;
  double max = 0.0;
};
CircleDistance circle_distance_extrema(const Neck& neck, double rho);

enum class BracketMode { inscribed, circumscribed };

struct NeckRegion {
  double s_inner = 0.0;
  double s_outer = 0.0;
  BracketMode mode = BracketMode::inscribed;
};

struct NeckRegionPair {
  NeckRegion inscribed;
  NeckRegion circumscribed;
};

/// True when the neck surface meets the open ball B_r((u0, 0)).
bool neck_meets_ball(const Neck& neck);

/// Inscribed: the widest s-annulus about |s| = sqrt(eta) whose image lies
/// in the ball. Circumscribed: the narrowest one whose image covers the
/// surface inside the ball. Throws BracketNotFound when either is missing.
NeckRegionPair neck_region(const Neck& neck);

enum class NeckQuantity { curvature_mass, area };

/// Integral of |A|^2 dA (or dA) over s_inner <= |s| <= s_outer. The
/// curvature of a near-degenerate neck concentrates in spots of relative
/// size ~|C| (or ~1/|C|) around s^2 = -eta (s^2 = eta); those spots are
/// split off with a smooth partition of unity and integrated on
/// log-radial patches centred on them.
QuadratureResult neck_integral(const Neck& neck, NeckQuantity quantity, double s_inner,
                               double s_outer, double tol,
                               std::size_t max_cells = kDefaultCellBudget);

/// Boundary term of Gauss-Bonnet for the annulus: outer circle counter-
/// clockwise minus inner circle.
QuadratureResult neck_boundary_kappa(const Neck& neck, double s_inner, double s_outer,
                                     double tol);

struct NeckMass {
  double low = 0.0;   // inscribed region
  double high = 0.0;  // circumscribed region
  double area_low = 0.0;
  double area_high = 0.0;
  double error_estimate = 0.0;
  bool meets_ball = false;
  bool inscribed_found = false;
  NeckRegionPair region;
};

/// Curvature mass bracket of the neck inside its ball. A neck that misses
/// the ball reports zero mass; one whose waist circle does not fit inside
/// the ball reports low = 0.
NeckMass neck_curvature_mass(const Neck& neck, double tol,
                             std::size_t max_cells = kDefaultCellBudget);

}  // namespace minsurf
