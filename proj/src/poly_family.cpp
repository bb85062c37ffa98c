#include "poly_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "errors.hpp"

namespace minsurf {

namespace {

constexpr double kDiskRadius = 0.5;

double magnitude(const PolyJet& jet, BoundQuantity q) {
  switch (q) {
    case BoundQuantity::p: return std::abs(jet.p);
    case BoundQuantity::dp: return std::abs(jet.dp);
    case BoundQuantity::ddp: return std::abs(jet.ddp);
  }
  return 0.0;
}

}  // namespace

RootFamily::RootFamily(int k) : k_(k) {
  if (k < 1) throw InvalidArgument("root family index k must be >= 1");
  roots_.reserve(static_cast<std::size_t>(2 * k + 1));
  for (int j = -k; j <= k; ++j) roots_.push_back(static_cast<double>(j) / (3.0 * k));
}

RootFamily RootFamily::baseline() {
  RootFamily f;
  f.k_ = 0;
  f.roots_ = {0.0};
  return f;
}

double RootFamily::root(int j) const {
  if (j < -k_ || j > k_) throw InvalidArgument("root index out of range");
  return roots_[static_cast<std::size_t>(j + k_)];
}

RootFamily make_family(int k) { return RootFamily(k); }

PolyJet eval_jet(const RootFamily& family, cplx z) noexcept {
  cplx p{1.0, 0.0}, dp{0.0, 0.0}, ddp{0.0, 0.0};
  for (double a : family.roots()) {
    const cplx f = z - a;
    ddp = ddp * f + 2.0 * dp;
    dp = dp * f + p;
    p = p * f;
  }
  return {z, p, dp, ddp};
}

const char* to_string(BoundQuantity q) noexcept {
  switch (q) {
    case BoundQuantity::p: return "p";
    case BoundQuantity::dp: return "dp";
    case BoundQuantity::ddp: return "ddp";
  }
  return "?";
}

double analytic_bound(int k, BoundQuantity q) {
  if (k < 1) throw InvalidArgument("analytic bounds need k >= 1");
  const double b = 5.0 / 6.0;
  const double n = 2.0 * k + 1.0;
  switch (q) {
    case BoundQuantity::p: return std::pow(b, n);
    case BoundQuantity::dp: return n * std::pow(b, 2.0 * k);
    case BoundQuantity::ddp: return n * 2.0 * k * std::pow(b, 2.0 * k - 1.0);
  }
  return 0.0;
}

std::array<BoundRow, 3> sup_bounds_report(const RootFamily& family, int grid_n) {
  if (grid_n < 64) throw InvalidArgument("grid_n must be >= 64");
  constexpr std::array<BoundQuantity, 3> kQuantities{BoundQuantity::p, BoundQuantity::dp,
                                                     BoundQuantity::ddp};
  std::array<BoundRow, 3> rows{};
  for (std::size_t q = 0; q < 3; ++q) {
    rows[q].k = family.k();
    rows[q].quantity = kQuantities[q];
  }
  auto consider = [&](cplx z) {
    const PolyJet jet = eval_jet(family, z);
    for (auto& row : rows) {
      const double m = magnitude(jet, row.quantity);
      if (m > row.sampled_sup) {
        row.sampled_sup = m;
        row.argmax = z;
      }
    }
  };

  const double two_pi = 2.0 * std::numbers::pi;
  consider(cplx{0.0, 0.0});
  for (int i = 1; i <= grid_n; ++i) {
    const double rho = kDiskRadius * i / grid_n;
    for (int m = 0; m < grid_n; ++m) consider(std::polar(rho, two_pi * m / grid_n));
  }

  // Maxima of |p^(n)| sit on the boundary circle; sample it densely and
  // polish each quantity's best sample with a bracketed 1-D search.
  const int boundary_n = 8 * grid_n;
  const double step = two_pi / boundary_n;
  for (int m = 0; m < boundary_n; ++m) consider(std::polar(kDiskRadius, step * m));
  for (auto& row : rows) {
    const double theta0 = std::arg(row.argmax);
    auto neg = [&](double theta) {
      return -magnitude(eval_jet(family, std::polar(kDiskRadius, theta)), row.quantity);
    };
    const auto [theta, value] =
        boost::math::tools::brent_find_minima(neg, theta0 - step, theta0 + step, 52);
    if (-value > row.sampled_sup) {
      row.sampled_sup = -value;
      row.argmax = std::polar(kDiskRadius, theta);
    }
  }

  if (family.k() >= 1) {
    for (auto& row : rows) {
      row.paper_bound = analytic_bound(family.k(), row.quantity);
      row.margin = row.paper_bound - row.sampled_sup;
      row.violated = !(row.margin > 0.0);
    }
  }
  return rows;
}

std::vector<DoublePoint> double_points(const RootFamily& family) {
  const int k = family.k();
  std::vector<DoublePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(k, 0)));
  for (int j = 1; j <= k; ++j) {
    const double a = family.root(j);
    const PolyJet jet = eval_jet(family, cplx{a, 0.0});
    DoublePoint dp;
    dp.j = j;
    dp.u0 = a * a;
    dp.slope = jet.dp.real() / (2.0 * a);
    double prod = 1.0;
    for (int l = 1; l <= k; ++l) {
      if (l == j) continue;
      const double al = family.root(l);
      prod *= std::abs(a * a - al * al);
    }
    dp.paper_slope = std::sqrt(prod);
    out.push_back(dp);
  }
  return out;
}

double measured_slope(const RootFamily& family, int j, double offset) {
  if (j < 1 || j > family.k()) throw InvalidArgument("double point index out of range");
  if (!(offset > 0.0)) throw InvalidArgument("offset must be positive");
  const double a = family.root(j);
  auto chord = [&](double d) {
    const cplx z{a + d, 0.0};
    const cplx v = eval_jet(family, z).p;
    const cplx du = z * z - a * a;
    return (v / du).real();
  };
  return 0.5 * (chord(offset) + chord(-offset));
}

ParityResult parity_check(const RootFamily& family, int samples, unsigned seed,
                          double rel_tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ParityResult res;
  res.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const double rho = kDiskRadius * std::sqrt(unit(rng));
    const cplx z = std::polar(rho, 2.0 * std::numbers::pi * unit(rng));
    const cplx plus = eval_jet(family, z).p;
    const cplx minus = eval_jet(family, -z).p;
    const double scale = std::max(std::abs(plus), std::numeric_limits<double>::min());
    const double rel = std::abs(minus + plus) / scale;
    res.worst_relative = std::max(res.worst_relative, rel);
  }
  res.pass = res.worst_relative <= rel_tol;
  return res;
}

}  // namespace minsurf
