#include "holo_geom.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace minsurf {

ChartJet family_chart_jet(const RootFamily& family, cplx z) noexcept {
  const PolyJet pj = eval_jet(family, z);
  ChartJet jet;
  jet.z = z;
  jet.f = {z * z, pj.p};
  jet.df = {2.0 * z, pj.dp};
  jet.ddf = {cplx{2.0, 0.0}, pj.ddp};
  return jet;
}

Chart family_chart(const RootFamily& family) {
  return Chart{[family](cplx z) { return family_chart_jet(family, z); }, {}};
}

double conformal_factor(const ChartJet& jet) noexcept {
  return std::norm(jet.df[0]) + std::norm(jet.df[1]);
}

namespace {

cplx wedge(const ChartJet& jet) noexcept {
  return jet.df[0] * jet.ddf[1] - jet.df[1] * jet.ddf[0];
}

}  // namespace

GeomSample geom_from_jet(const ChartJet& jet) {
  const double lambda = conformal_factor(jet);
  if (!(lambda > 0.0)) throw NotImmersed("chart is not immersed at this point (lambda = 0)");
  GeomSample g;
  g.lambda = lambda;
  g.darea = lambda;
  g.K = -2.0 * std::norm(wedge(jet)) / (lambda * lambda * lambda);
  g.A2 = -2.0 * g.K;
  g.pos = {jet.f[0].real(), jet.f[0].imag(), jet.f[1].real(), jet.f[1].imag()};
  return g;
}

double curvature_mass_density(const ChartJet& jet) noexcept {
  const double lambda = conformal_factor(jet);
  if (!(lambda > 0.0)) return 0.0;
  return 4.0 * std::norm(wedge(jet)) / (lambda * lambda);
}

cplx dlambda_dz(const ChartJet& jet) noexcept {
  return jet.ddf[0] * std::conj(jet.df[0]) + jet.ddf[1] * std::conj(jet.df[1]);
}

double kappa_ds_density(const ChartJet& jet, cplx center, double rho) noexcept {
  const double lambda = conformal_factor(jet);
  const cplx dir = (jet.z - center) / rho;
  // d/dr log sqrt(lambda) = Re(dir * dlambda/dz) / lambda
  return 1.0 + rho * (dir * dlambda_dz(jet)).real() / lambda;
}

BoundarySample boundary_sample(const ChartJet& jet, cplx center, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("circle radius must be positive");
  const double lambda = conformal_factor(jet);
  if (!(lambda > 0.0)) throw NotImmersed("boundary point is not immersed (lambda = 0)");
  const cplx dir = (jet.z - center) / rho;
  BoundarySample b;
  b.theta = std::arg(dir);
  const double sqrt_lambda = std::sqrt(lambda);
  b.ds = sqrt_lambda * rho;
  b.kappa_g = kappa_ds_density(jet, center, rho) / b.ds;

  // gamma(theta) = f(center + rho e^{i theta}) viewed in R^4.
  const cplx zt = cplx{0.0, 1.0} * rho * dir;  // dz/dtheta
  const cplx ztt = -rho * dir;                 // d^2z/dtheta^2
  std::array<cplx, 2> g1{}, g2{};
  for (int i = 0; i < 2; ++i) {
    g1[i] = jet.df[i] * zt;
    g2[i] = jet.ddf[i] * zt * zt + jet.df[i] * ztt;
  }
  double n1 = 0.0, n2 = 0.0, dot = 0.0;
  for (int i = 0; i < 2; ++i) {
    n1 += std::norm(g1[i]);
    n2 += std::norm(g2[i]);
    dot += (g1[i] * std::conj(g2[i])).real();
  }
  const double cross2 = std::max(n1 * n2 - dot * dot, 0.0);
  b.ambient_kappa = std::sqrt(cross2) / (n1 * std::sqrt(n1));
  return b;
}

double gauss_curvature_fd(const Chart& chart, cplx z, double h) {
  if (!(h > 0.0)) throw InvalidArgument("stencil step must be positive");
  auto jet_at = [&](cplx w) {
    if (chart.in_domain && !chart.in_domain(w))
      throw DomainError("finite-difference stencil leaves the chart domain");
    return chart.jet(w);
  };
  const ChartJet centre = jet_at(z);
  const double lambda = conformal_factor(centre);
  if (!(lambda > 0.0)) throw NotImmersed("oracle evaluated at a non-immersed point");
  // Unitary frame with f'(z) along the first axis: lambda = |a|^2 (1 + |b/a|^2),
  // log|a|^2 is harmonic and b/a vanishes at z.
  const double norm = std::sqrt(lambda);
  const cplx e1 = centre.df[0] / norm, e2 = centre.df[1] / norm;
  auto phi = [&](cplx w) {
    const ChartJet jet = jet_at(w);
    const cplx a = std::conj(e1) * jet.df[0] + std::conj(e2) * jet.df[1];
    const cplx b = -e2 * jet.df[0] + e1 * jet.df[1];
    if (a == cplx{0.0, 0.0}) throw DomainError("rotated derivative vanishes on the stencil");
    return std::log1p(std::norm(b / a));
  };
  const double centre_phi = phi(z);
  auto laplacian = [&](double step) {
    const double sum = phi(z + step) + phi(z - step) + phi(z + cplx{0.0, step}) +
                       phi(z - cplx{0.0, step});
    return (sum - 4.0 * centre_phi) / (step * step);
  };
  const double l1 = laplacian(h);
  const double l2 = laplacian(0.5 * h);
  const double l4 = laplacian(0.25 * h);
  const double r1 = (4.0 * l2 - l1) / 3.0;
  const double r2 = (4.0 * l4 - l2) / 3.0;
  const double lap = (16.0 * r2 - r1) / 15.0;
  return -lap / (2.0 * lambda);
}

}  // namespace minsurf
