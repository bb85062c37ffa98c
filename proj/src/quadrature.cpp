#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

namespace minsurf {

namespace {

constexpr unsigned kOrder = 6;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLogCoreRatio = 1e-40;

// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Bounds {
  double t0, t1, th0, th1;
};

struct Cell {
  Bounds b;
  double value;
  double err;
  std::array<double, 4> child;
  bool alive;
};

class PolarIntegrator {
 public:
  PolarIntegrator(const PlaneDensity& density, const PolarPatch& patch)
      : density_(density), patch_(patch) {
    // symmetric 6-point rule: abscissae listed for the non-negative half
    const auto& x = boost::math::quadrature::gauss<double, kOrder>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, kOrder>::weights();
    std::size_t n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      nodes_[n] = x[i];
      weights_[n++] = w[i];
      if (x[i] != 0.0) {
        nodes_[n] = -x[i];
        weights_[n++] = w[i];
      }
    }
  }

  double rule(const Bounds& b) const {
    const double tm = 0.5 * (b.t0 + b.t1), th = 0.5 * (b.t1 - b.t0);
    const double pm = 0.5 * (b.th0 + b.th1), ph = 0.5 * (b.th1 - b.th0);
    Accumulator acc;
    for (unsigned i = 0; i < kOrder; ++i) {
      const double t = tm + th * nodes_[i];
      double r, jac;
      if (patch_.map == RadialMap::logarithmic) {
        r = std::exp(t);
        jac = r * r;
      } else {
        r = t;
        jac = r;
      }
      double row = 0.0;
      for (unsigned m = 0; m < kOrder; ++m) {
        const double phi = pm + ph * nodes_[m];
        row += weights_[m] * density_(patch_.center + std::polar(r, phi));
      }
      acc.add(weights_[i] * jac * row);
    }
    return acc.value() * th * ph;
  }

  static std::array<Bounds, 4> quarters(const Bounds& b) {
    const double tm = 0.5 * (b.t0 + b.t1), pm = 0.5 * (b.th0 + b.th1);
    return {Bounds{b.t0, tm, b.th0, pm}, Bounds{tm, b.t1, b.th0, pm},
            Bounds{b.t0, tm, pm, b.th1}, Bounds{tm, b.t1, pm, b.th1}};
  }

  Cell make_cell(const Bounds& b, double coarse) const {
    Cell c{b, 0.0, 0.0, {}, true};
    const auto q = quarters(b);
    Accumulator acc;
    for (std::size_t i = 0; i < 4; ++i) {
      c.child[i] = rule(q[i]);
      acc.add(c.child[i]);
    }
    c.value = acc.value();
    c.err = std::abs(c.value - coarse);
    if (!std::isfinite(c.value)) c.err = std::numeric_limits<double>::infinity();
    return c;
  }

 private:
  const PlaneDensity& density_;
  const PolarPatch& patch_;
  std::array<double, kOrder> nodes_{};
  std::array<double, kOrder> weights_{};
};

QuadratureResult collect(const std::vector<Cell>& cells, std::size_t live) {
  Accumulator v, e;
  for (const auto& c : cells) {
    if (!c.alive) continue;
    v.add(c.value);
    e.add(c.err);
  }
  return {v.value(), e.value(), live};
}

}  // namespace

void PuncturedDiskSpec::validate() const {
  if (!(radius > 0.0)) throw InvalidArgument("disk radius must be positive");
  for (std::size_t i = 0; i < exclusions.size(); ++i) {
    const auto& a = exclusions[i];
    if (!(a.radius > 0.0)) throw InvalidArgument("exclusion radius must be positive");
    if (!(std::abs(a.center) + a.radius < radius))
      throw InvalidArgument("exclusion disk is not inside the open disk");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& b = exclusions[j];
      if (!(std::abs(a.center - b.center) > a.radius + b.radius))
        throw InvalidArgument("exclusion disks overlap");
    }
  }
}

QuadratureResult integrate_polar(const PlaneDensity& density, const PolarPatch& patch,
                                 double tol, std::size_t max_cells) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (!(patch.r_inner >= 0.0) || !(patch.r_outer >= patch.r_inner))
    throw InvalidArgument("polar patch needs 0 <= r_inner <= r_outer");
  if (patch.r_outer == patch.r_inner) return {0.0, 0.0, 0};
  if (patch.map == RadialMap::logarithmic && !(patch.r_inner > 0.0))
    throw InvalidArgument("logarithmic radial map needs r_inner > 0");

  double t0 = patch.r_inner, t1 = patch.r_outer;
  std::size_t n_t = 4;
  if (patch.map == RadialMap::logarithmic) {
    t0 = std::log(patch.r_inner);
    t1 = std::log(patch.r_outer);
    n_t = static_cast<std::size_t>(std::clamp(std::ceil((t1 - t0) / 2.0), 1.0, 64.0));
  }
  constexpr std::size_t n_theta = 8;

  PolarIntegrator integrator(density, patch);
  std::vector<Cell> cells;
  cells.reserve(4 * n_t * n_theta);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry> heap;
  double total_err = 0.0;
  for (std::size_t i = 0; i < n_t; ++i) {
    for (std::size_t m = 0; m < n_theta; ++m) {
      const Bounds b{t0 + (t1 - t0) * i / n_t, t0 + (t1 - t0) * (i + 1) / n_t,
                     kTwoPi * m / n_theta, kTwoPi * (m + 1) / n_theta};
      cells.push_back(integrator.make_cell(b, integrator.rule(b)));
      heap.emplace(cells.back().err, cells.size() - 1);
      total_err += cells.back().err;
    }
  }
  std::size_t live = cells.size();
  std::size_t splits = 0;

  while (total_err > tol) {
    if (live + 3 > max_cells) {
      throw NonConvergence("adaptive polar quadrature exhausted its cell budget (" +
                               std::to_string(max_cells) + " cells)",
                           collect(cells, live));
    }
    const std::size_t idx = heap.top().second;
    heap.pop();
    const Cell parent = cells[idx];
    cells[idx].alive = false;
    total_err -= parent.err;
    const auto q = PolarIntegrator::quarters(parent.b);
    for (std::size_t i = 0; i < 4; ++i) {
      cells.push_back(integrator.make_cell(q[i], parent.child[i]));
      heap.emplace(cells.back().err, cells.size() - 1);
      total_err += cells.back().err;
    }
    live += 3;
    if (++splits % 1024 == 0) total_err = collect(cells, live).error_estimate;
    if (!std::isfinite(total_err)) {
      throw NonConvergence("non-finite density value inside the integration patch",
                           collect(cells, live));
    }
  }
  return collect(cells, live);
}

QuadratureResult integrate_disk(const PlaneDensity& density, cplx center, double radius,
                                double tol, std::size_t max_cells) {
  if (!(radius >= 0.0)) throw InvalidArgument("disk radius must be non-negative");
  if (radius == 0.0) return {0.0, 0.0, 0};
  return integrate_polar(density,
                         PolarPatch{center, radius * kLogCoreRatio, radius,
                                    RadialMap::logarithmic},
                         tol, max_cells);
}

QuadratureResult integrate_region(const PlaneDensity& density, const PuncturedDiskSpec& spec,
                                  double tol, std::size_t max_cells) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  spec.validate();
  const double piece_tol = tol / static_cast<double>(spec.exclusions.size() + 1);
  QuadratureResult out = integrate_disk(density, cplx{0.0, 0.0}, spec.radius, piece_tol,
                                        max_cells);
  Accumulator value;
  value.add(out.value);
  for (const auto& ex : spec.exclusions) {
    const QuadratureResult piece =
        integrate_disk(density, ex.center, ex.radius, piece_tol, max_cells);
    value.add(-piece.value);
    out.error_estimate += piece.error_estimate;
    out.cells += piece.cells;
  }
  out.value = value.value();
  return out;
}

QuadratureResult integrate_circle(const LineDensity& line_density, double tol,
                                  std::size_t max_points) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  std::size_t n = 64;
  Accumulator sum;
  for (std::size_t i = 0; i < n; ++i) sum.add(line_density(kTwoPi * i / n));
  double prev = sum.value() * kTwoPi / n;
  for (int level = 0;; ++level) {
    if (2 * n > max_points) {
      throw NonConvergence("periodic trapezoid rule exhausted its point budget",
                           QuadratureResult{prev, std::numeric_limits<double>::infinity(), n});
    }
    for (std::size_t i = 0; i < n; ++i) sum.add(line_density(kTwoPi * (2 * i + 1) / (2 * n)));
    n *= 2;
    const double cur = sum.value() * kTwoPi / n;
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (level >= 1 && diff <= tol) return {cur, diff, n};
  }
}

QuadratureResult integrate_annulus(const PlaneDensity& density, double s_inner,
                                   double s_outer, double tol, std::size_t max_cells) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (!(s_inner > 0.0) || !(s_outer >= s_inner))
    throw InvalidArgument("annulus needs 0 < s_inner <= s_outer");
  return integrate_polar(density,
                         PolarPatch{cplx{0.0, 0.0}, s_inner, s_outer, RadialMap::logarithmic},
                         tol, max_cells);
}

}  // namespace minsurf
