#pragma once

#include <array>
#include <complex>
#include <functional>

#include "poly_family.hpp"

namespace minsurf {

/// 2-jet of a holomorphic chart f = (f1, f2) : C -> C^2 = R^4 at z.
struct ChartJet {
  cplx z;
  std::array<cplx, 2> f;
  std::array<cplx, 2> df;
  std::array<cplx, 2> ddf;
};

struct GeomSample {
  double lambda = 0.0;  // conformal factor |f1'|^2 + |f2'|^2
  double darea = 0.0;   // area density per unit parameter area (= lambda)
  double K = 0.0;       // Gauss curvature
  double A2 = 0.0;      // |A|^2 = -2K
  std::array<double, 4> pos{};
};

struct BoundarySample {
  double theta = 0.0;
  double kappa_g = 0.0;  // geodesic curvature in the induced metric
  double ds = 0.0;       // induced length per radian
  double ambient_kappa = 0.0;
};

/// A jet-producing chart. `in_domain` defaults to the whole plane.
struct Chart {
  std::function<ChartJet(cplx)> jet;
  std::function<bool(cplx)> in_domain;
};

/// Chart G_k(z) = (z^2, p_k(z)).
ChartJet family_chart_jet(const RootFamily& family, cplx z) noexcept;
Chart family_chart(const RootFamily& family);

double conformal_factor(const ChartJet& jet) noexcept;

/// Closed form K = -2 |f1' f2'' - f2' f1''|^2 / lambda^3 for a holomorphic
/// chart in flat C^2. Throws NotImmersed when lambda = 0.
GeomSample geom_from_jet(const ChartJet& jet);

/// |A|^2 times the area density, 4 |f1' f2'' - f2' f1''|^2 / lambda^2.
/// Returns 0 at non-immersed points instead of throwing.
double curvature_mass_density(const ChartJet& jet) noexcept;

/// d lambda / dz = sum_i f_i'' conj(f_i').
cplx dlambda_dz(const ChartJet& jet) noexcept;

/// Geodesic curvature data for the circle |z - center| = rho at the jet point,
/// traversed counter-clockwise. kappa_g * ds = 1 + rho * d(log sqrt(lambda))/dr.
BoundarySample boundary_sample(const ChartJet& jet, cplx center, double rho);

/// kappa_g * ds per radian on that circle (no sqrt; integrand form).
double kappa_ds_density(const ChartJet& jet, cplx center, double rho) noexcept;

/// Independent curvature oracle K = -Delta(log lambda) / (2 lambda) from a
/// five-point stencil on first-derivative data only, twice
/// Richardson-extrapolated (h, h/2, h/4). f' is first rotated by the unitary
/// frame taking f'(z) to (|f'(z)|, 0); in that frame lambda = |a|^2 (1 + |b/a|^2)
/// with log|a|^2 harmonic, so only log(1 + |b/a|^2) is differenced.
double gauss_curvature_fd(const Chart& chart, cplx z, double h);

}  // namespace minsurf
