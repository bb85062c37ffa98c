#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace minsurf {

using cplx = std::complex<double>;

/// Roots a_{k,j} = j/(3k), j = -k..k, stored in increasing order.
class RootFamily {
 public:
  explicit RootFamily(int k);

  /// Degenerate k = 0 member: the single root 0, i.e. p(z) = z.
  static RootFamily baseline();

  int k() const noexcept { return k_; }
  std::span<const double> roots() const noexcept { return roots_; }
  std::size_t size() const noexcept { return roots_.size(); }

  /// a_{k,j} for -k <= j <= k.
  double root(int j) const;

 private:
  RootFamily() = default;

  int k_ = 0;
  std::vector<double> roots_;
};

RootFamily make_family(int k);

struct PolyJet {
  cplx z;
  cplx p;
  cplx dp;
  cplx ddp;
};

/// Value and first two derivatives of p_k at z, accumulated one linear
/// factor at a time. No division, so the jet is exact at the roots.
PolyJet eval_jet(const RootFamily& family, cplx z) noexcept;

enum class BoundQuantity { p, dp, ddp };

const char* to_string(BoundQuantity q) noexcept;

struct BoundRow {
  int k = 0;
  BoundQuantity quantity = BoundQuantity::p;
  double sampled_sup = 0.0;
  double paper_bound = 0.0;
  double margin = 0.0;  // paper_bound - sampled_sup
  cplx argmax;
  bool violated = false;
};

/// Analytic sup bounds over the radius-1/2 disk:
/// (5/6)^{2k+1}, (2k+1)(5/6)^{2k}, (2k+1)2k(5/6)^{2k-1}.
double analytic_bound(int k, BoundQuantity q);

/// Sampled sup of |p|, |p'|, |p''| over the closed radius-1/2 disk on a
/// grid_n x grid_n polar grid, followed by a boundary-circle refinement.
std::array<BoundRow, 3> sup_bounds_report(const RootFamily& family, int grid_n);

struct DoublePoint {
  int j = 0;
  double u0 = 0.0;           // a_{k,j}^2
  double slope = 0.0;        // p'(a)/(2a), tangent-cone slope from the chain rule
  double paper_slope = 0.0;  // sqrt(prod_{l != j} |a_j^2 - a_l^2|), 1 <= l <= k
};

/// One entry per distinct self-intersection image point (a_j^2, 0), j = 1..k.
std::vector<DoublePoint> double_points(const RootFamily& family);

/// Slope of v against (u - u0) measured along the image of the real line
/// through a_{k,j}, by a symmetric offset +-offset.
double measured_slope(const RootFamily& family, int j, double offset = 1e-5);

struct ParityResult {
  bool pass = true;
  double worst_relative = 0.0;
  int samples = 0;
};

/// Checks p(-z) = -p(z) at uniformly random points of the radius-1/2 disk.
ParityResult parity_check(const RootFamily& family, int samples,
                          unsigned seed = 20240601u, double rel_tol = 1e-12);

}  // namespace minsurf
