#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "holo_geom.hpp"
#include "neck_model.hpp"
#include "oracles.hpp"
#include "quadrature.hpp"

using namespace minsurf;

namespace {

ChartJet flat_jet(cplx z) { return {z, {z, 0.0}, {1.0, 0.0}, {0.0, 0.0}}; }
ChartJet parabola_jet(cplx z) { return {z, {z, 0.5 * z * z}, {1.0, z}, {0.0, 1.0}}; }

const Neck kNecks[] = {
    {0.0, 1.0, 1e-4, 0.05},   {0.1, 1.0 / 3, 1e-3, 0.05}, {0.2, -0.5, 1e-6, 0.01},
    {0.05, 2.0, 1e-2, 0.3},  {0.0, 0.05, 1e-5, 0.02},
};

double neck_step(const Neck& n, cplx s) {
  const double q = std::sqrt(n.eta);
  double d = std::abs(s);
  for (cplx a : {cplx{q, 0}, cplx{-q, 0}, cplx{0, q}, cplx{0, -q}}) d = std::min(d, std::abs(s - a));
  return 0.02 * d;
}

Chart neck_chart(const Neck& n) {
  return {[n](cplx s) { return neck_jet(n, s); }, [](cplx s) { return s != cplx{0.0, 0.0}; }};
}

cplx random_neck_point(std::mt19937_64& rng, const Neck& n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(std::sqrt(n.eta) * std::exp(4.0 * u(rng) - 2.0), 2.0 * oracle::pi * u(rng));
}

}  // namespace

TEST_CASE("flat chart") {
  for (cplx z : {cplx{0.0, 0.0}, cplx{0.3, -0.2}, cplx{-0.1, 0.4}}) {
    const auto g = geom_from_jet(flat_jet(z));
    CHECK(g.lambda == 1.0);
    CHECK(g.darea == 1.0);
    CHECK(g.K == 0.0);
    CHECK(g.A2 == 0.0);
    CHECK(g.pos[0] == z.real());
    CHECK(g.pos[1] == z.imag());
  }
  const Chart chart{flat_jet, {}};
  CHECK(std::abs(gauss_curvature_fd(chart, {0.2, 0.1}, 1e-2)) < 1e-10);
}

TEST_CASE("parabola chart (z, z^2/2) at the origin") {
  const auto g = geom_from_jet(parabola_jet(0.0));
  CHECK(g.lambda == 1.0);
  CHECK(g.K == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(g.A2 == doctest::Approx(4.0).epsilon(1e-15));
  const Chart chart{parabola_jet, {}};
  CHECK(std::abs(gauss_curvature_fd(chart, 0.0, 1e-3) + 2.0) < 1e-5);
  const auto real = oracle::gauss_equation({1.0, 0.0}, {0.0, 1.0});
  CHECK(real.K == doctest::Approx(-2.0));
  CHECK(real.A2 == doctest::Approx(4.0));
}

TEST_CASE("non-immersed points are rejected") {
  const ChartJet j{0.0, {0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(geom_from_jet(j), NotImmersed);
  CHECK(curvature_mass_density(j) == 0.0);
  CHECK_THROWS_AS(boundary_sample(j, 0.0, 0.5), NotImmersed);
}

TEST_CASE("stencil outside the chart domain is rejected") {
  const Chart chart{flat_jet, [](cplx z) { return z.real() > 0.0; }};
  CHECK_THROWS_AS(gauss_curvature_fd(chart, {0.01, 0.0}, 0.02), DomainError);
}

TEST_CASE("G_k chart jet") {
  const auto f = make_family(3);
  const cplx z{0.2, -0.35};
  const auto j = family_chart_jet(f, z);
  const auto p = eval_jet(f, z);
  CHECK(j.f[0] == z * z);
  CHECK(j.df[0] == 2.0 * z);
  CHECK(j.ddf[0] == cplx{2.0, 0.0});
  CHECK(j.f[1] == p.p);
  CHECK(j.df[1] == p.dp);
  CHECK(j.ddf[1] == p.ddp);
}

TEST_CASE("wedge curvature against the difference oracle at fixed points") {
  {
    const auto f = make_family(1);
    const auto K = geom_from_jet(family_chart_jet(f, 0.5)).K;
    CHECK(oracle::relative(gauss_curvature_fd(family_chart(f), 0.5, 0.02 / 3), K) < 1e-6);
  }
  {
    const auto f = make_family(2);
    const cplx z{0.3, 0.1};
    const auto K = geom_from_jet(family_chart_jet(f, z)).K;
    CHECK(oracle::relative(gauss_curvature_fd(family_chart(f), z, 0.02 / 6), K) < 1e-6);
  }
}

TEST_CASE("property: wedge curvature equals the real Gauss equation on G_k") {
  std::mt19937_64 rng(17);
  for (int k = 0; k <= 8; ++k) {
    const auto f = k == 0 ? RootFamily::baseline() : make_family(k);
    for (int i = 0; i < 100; ++i) {
      const cplx z = oracle::random_in_disk(rng, 0.5);
      const auto jet = family_chart_jet(f, z);
      const auto g = geom_from_jet(jet);
      const auto real = oracle::gauss_equation(jet.df, jet.ddf);
      INFO("k = " << k << " z = " << z.real() << "," << z.imag());
      CHECK(oracle::relative(g.K, real.K) < 1e-9);
      CHECK(oracle::relative(g.A2, real.A2) < 1e-9);
      CHECK(oracle::relative(g.lambda, real.lambda) < 1e-14);
      CHECK(g.A2 == -2.0 * g.K);
      CHECK(g.K <= 0.0);
      CHECK(curvature_mass_density(jet) == doctest::Approx(g.A2 * g.lambda).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: difference oracle on G_k at random points") {
  std::mt19937_64 rng(23);
  for (int k = 1; k <= 8; ++k) {
    const auto f = make_family(k);
    const auto chart = family_chart(f);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx z = oracle::random_in_disk(rng, 0.5);
      const double K = geom_from_jet(family_chart_jet(f, z)).K;
      const double h = 0.02 * std::min(std::abs(z), 1.0 / (3.0 * k));
      worst = std::max(worst, oracle::relative(gauss_curvature_fd(chart, z, h), K));
    }
    INFO("k = " << k);
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("property: neck charts against both oracles") {
  std::mt19937_64 rng(29);
  for (const Neck& n : kNecks) {
    const Chart chart = neck_chart(n);
    double worst_fd = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx s = random_neck_point(rng, n);
      const auto jet = neck_jet(n, s);
      const auto direct = oracle::neck_jet(n.u0, n.C, n.eta, s);
      for (int c = 0; c < 2; ++c) {
        CHECK(oracle::relative(jet.f[c], direct[0][c]) < 1e-12);
        CHECK(oracle::relative(jet.df[c], direct[1][c]) < 1e-12);
        CHECK(oracle::relative(jet.ddf[c], direct[2][c]) < 1e-12);
      }
      const auto g = geom_from_jet(jet);
      const auto real = oracle::gauss_equation(jet.df, jet.ddf);
      CHECK(oracle::relative(g.K, real.K) < 1e-8);
      CHECK(g.K <= 0.0);
      CHECK(g.A2 == -2.0 * g.K);
      worst_fd = std::max(worst_fd, oracle::relative(gauss_curvature_fd(chart, s, neck_step(n, s)), g.K));
    }
    INFO("C = " << n.C << " eta = " << n.eta);
    CHECK(worst_fd < 1e-6);
  }
}

TEST_CASE("dlambda_dz against differences of lambda") {
  std::mt19937_64 rng(31);
  const auto f = make_family(4);
  for (int i = 0; i < 50; ++i) {
    const cplx z = oracle::random_in_disk(rng, 0.45);
    const auto lam = [&](cplx w) { return cplx{conformal_factor(family_chart_jet(f, w)), 0.0}; };
    const cplx dx = oracle::fd_first(lam, z, 1e-3);
    const auto lam_y = [&](cplx w) { return lam(z + cplx{0.0, (w - z).real()}); };
    const cplx dy = oracle::fd_first(lam_y, z, 1e-3);
    const cplx expect = 0.5 * (dx - cplx{0.0, 1.0} * dy);
    CHECK(std::abs(dlambda_dz(family_chart_jet(f, z)) - expect) < 1e-9 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("flat disk boundary") {
  for (double th : {0.0, 1.0, 2.5, 4.0}) {
    const cplx z = std::polar(0.5, th);
    const auto b = boundary_sample(flat_jet(z), 0.0, 0.5);
    CHECK(b.kappa_g == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.ds == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.ambient_kappa == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(b.theta == doctest::Approx(th > oracle::pi ? th - 2 * oracle::pi : th));
    CHECK(kappa_ds_density(flat_jet(z), 0.0, 0.5) == doctest::Approx(1.0));
  }
  const auto total = integrate_circle(
      [](double th) { return kappa_ds_density(flat_jet(std::polar(0.5, th)), 0.0, 0.5); }, 1e-12);
  CHECK(total.value == doctest::Approx(2.0 * oracle::pi).epsilon(1e-12));
}

TEST_CASE("G_1 boundary at theta = 0") {
  const auto f = make_family(1);
  const auto b = boundary_sample(family_chart_jet(f, 0.5), 0.0, 0.5);
  CHECK(std::abs(b.kappa_g) <= b.ambient_kappa + 1e-12);
  CHECK(b.ds == doctest::Approx(0.5 * std::sqrt(conformal_factor(family_chart_jet(f, 0.5)))));
}

TEST_CASE("property: geodesic curvature never exceeds ambient curvature") {
  for (int k = 0; k <= 8; ++k) {
    const auto f = k == 0 ? RootFamily::baseline() : make_family(k);
    for (int i = 0; i < 360; ++i) {
      const cplx z = std::polar(0.5, 2.0 * oracle::pi * i / 360.0);
      const auto b = boundary_sample(family_chart_jet(f, z), 0.0, 0.5);
      CHECK(b.ds > 0.0);
      CHECK(std::abs(b.kappa_g) <= b.ambient_kappa * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("boundary terms of G_k against the conformal-change oracle") {
  for (int k = 0; k <= 8; ++k) {
    const auto f = k == 0 ? RootFamily::baseline() : make_family(k);
    const auto kappa = integrate_circle(
        [&](double th) { return kappa_ds_density(family_chart_jet(f, std::polar(0.5, th)), 0.0, 0.5); },
        1e-12);
    const auto length = integrate_circle(
        [&](double th) {
          return boundary_sample(family_chart_jet(f, std::polar(0.5, th)), 0.0, 0.5).ds;
        },
        1e-12);
    INFO("k = " << k);
    CHECK(kappa.value == doctest::Approx(oracle::boundary_kappa(k)).epsilon(1e-9));
    CHECK(length.value == doctest::Approx(oracle::boundary_length(k)).epsilon(1e-12));
  }
}
