#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace minsurf {

using cplx = std::complex<double>;
using PlaneDensity = std::function<double(cplx)>;
using LineDensity = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t cells = 0;  // leaf cells (2-D) or sample points (1-D)
};

inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 22;

/// Cell budget exhausted before the tolerance was met.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, QuadratureResult partial)
      : Error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

struct Exclusion {
  cplx center;
  double radius = 0.0;
};

struct PuncturedDiskSpec {
  double radius = 0.5;
  std::vector<Exclusion> exclusions;

  /// Exclusions must be pairwise disjoint and inside the open disk.
  void validate() const;
};

enum class RadialMap { linear, logarithmic };

/// {center + r e^{i theta} : r_inner <= r <= r_outer}. With the logarithmic
/// map cells are uniform in log r; r_inner must then be positive.
struct PolarPatch {
  cplx center;
  double r_inner = 0.0;
  double r_outer = 0.0;
  RadialMap map = RadialMap::linear;
};

/// Adaptive tensor Gauss-Legendre on polar cells. Each cell is compared with
/// its four children (h vs h/2); the cell with the largest disagreement is
/// split until the summed disagreement is <= tol. Leaves are reduced in
/// creation order, so the result is bit-reproducible.
QuadratureResult integrate_polar(const PlaneDensity& density, const PolarPatch& patch,
                                 double tol, std::size_t max_cells = kDefaultCellBudget);

/// Full disk of the given radius. Log-radial cells down to radius * 1e-40;
/// the omitted core is below any representable tolerance for finite densities.
QuadratureResult integrate_disk(const PlaneDensity& density, cplx center, double radius,
                                double tol, std::size_t max_cells = kDefaultCellBudget);

/// Disk minus exclusion disks, computed as disk - sum(exclusions) with tol
/// split evenly across the pieces.
QuadratureResult integrate_region(const PlaneDensity& density, const PuncturedDiskSpec& spec,
                                  double tol, std::size_t max_cells = kDefaultCellBudget);

/// Periodic trapezoid rule on [0, 2 pi), doubled until successive levels agree.
QuadratureResult integrate_circle(const LineDensity& line_density, double tol,
                                  std::size_t max_points = kDefaultCellBudget);

/// Annulus s_inner <= |s| <= s_outer about the origin, log-radial cells.
QuadratureResult integrate_annulus(const PlaneDensity& density, double s_inner,
                                   double s_outer, double tol,
                                   std::size_t max_cells = kDefaultCellBudget);

}  // namespace minsurf
