#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neck_model.hpp"
#include "poly_family.hpp"
#include "quadrature.hpp"

namespace minsurf {

struct AssemblyParams {
  double tol = 1e-8;              // per-integral quadrature tolerance
  std::optional<double> eta;      // overrides the per-neck default
  std::optional<double> r;        // overrides the per-neck default
  std::vector<int> flattened;     // double points left as transverse crossings
  std::size_t max_cells = kDefaultCellBudget;
  bool parallel = true;
};

/// Default ball radius: a quarter of the smallest gap from u0 = a_j^2 to its
/// neighbours (including the branch value 0) and to the image boundary |u| = 1/4.
double default_neck_radius(const RootFamily& family, int j);

/// Default smoothing: min(1/(200k), min(1, C^2) r^2 / 100).
double default_neck_eta(int k, double slope, double r);

/// Largest radius rho such that G_k maps the disk |z -+ a_j| <= rho into
/// B_r((a_j^2, 0)); bisection on 720-point circle maxima, then verified on
/// a 4x denser sampling of both circles, shrinking on failure.
double exclusion_radius(const RootFamily& family, int j, double r);

/// Two exclusion disks (+-a_j, rho_j) per smoothed double point.
PuncturedDiskSpec preimage_exclusions(const RootFamily& family, const std::vector<int>& js,
                                      const std::vector<double>& radii);

struct NeckRecord {
  int j = 0;
  double u0 = 0.0;
  double slope = 0.0;
  double eta = 0.0;
  double r = 0.0;
  double rho = 0.0;  // exclusion radius in the parameter disk
  NeckMass mass;
  double excised_A2 = 0.0;    // immersed chart over both exclusion disks
  double excised_area = 0.0;
  double seam_kappa = 0.0;    // cut-circle boundary terms, immersed side + neck side
};

struct CurvatureLedger {
  int k = 0;
  int necks = 0;
  std::vector<NeckRecord> neck_records;
  double area_unsmoothed = 0.0;   // G_k over the full disk
  double intA2_unsmoothed = 0.0;
  double area_immersed = 0.0;     // G_k over the punctured disk
  double area_necks = 0.0;        // bracket midpoint
  double area_necks_low = 0.0;
  double area_necks_high = 0.0;
  double intA2_immersed = 0.0;
  double intA2_necks_low = 0.0;
  double intA2_necks_high = 0.0;
  double boundary_length = 0.0;
  double int_kappa = 0.0;
  int genus = 0;
  int chi = 1;
  double gb_residual = 0.0;       // |int K_total + int kappa - 2 pi chi|, bracket midpoint
  double gb_tolerance = 0.0;      // quad error + half bracket width + |seam_total|
  double seam_kappa = 0.0;
  double gb_closure = 0.0;        // residual once the cut-circle terms are included
  double chart_gb_residual = 0.0; // |int_D K + int kappa - 2 pi| for the unsmoothed chart
  double chart_gb_error = 0.0;    // quadrature error behind chart_gb_residual
  double quad_error = 0.0;

  double area_total() const noexcept { return area_immersed + area_necks; }
  double total_A2_low() const noexcept { return intA2_immersed + intA2_necks_low; }
  double total_A2_high() const noexcept { return intA2_immersed + intA2_necks_high; }
  double total_A2_mid() const noexcept { return 0.5 * (total_A2_low() + total_A2_high()); }
  /// -2 (2 pi chi - int kappa), Gauss-Bonnet combined with |A|^2 = -2K.
  double predicted_A2() const noexcept;
  /// 4 pi g - 2 pi + int kappa, half of combined_identity_A2.
  double printed_identity_A2() const noexcept;
  /// 8 pi g - 4 pi + 2 int kappa (equal to predicted_A2).
  double combined_identity_A2() const noexcept;
  /// Slack for the bracket test: quadrature error plus twice |seam_kappa|.
  double bracket_slack() const noexcept;
  bool bracket_consistent() const noexcept;
};

/// Full curvature ledger of the smoothed surface at level k (k = 0 is the
/// baseline chart (z^2, z) with no necks).
CurvatureLedger assemble(int k, const AssemblyParams& params = {});

struct GrowthRow {
  int k = 0;
  int genus = 0;
  double total_A2_low = 0.0;
  double total_A2_mid = 0.0;
  double total_A2_high = 0.0;
  double area_total = 0.0;
  double boundary_length = 0.0;
  double int_kappa = 0.0;
  double predicted_A2 = 0.0;
  double gb_residual = 0.0;
  bool bracket_consistent = false;
};

GrowthRow growth_row(const CurvatureLedger& ledger);

struct GrowthScan {
  std::vector<GrowthRow> rows;
  std::vector<CurvatureLedger> ledgers;
  double slope = 0.0;           // least squares of total_A2_mid against genus
  double intercept = 0.0;
  double slope_over_8pi = 0.0;
  double area_sup = 0.0;
  bool complete = true;
  bool nonconvergence = false;  // the failure was quadrature non-convergence
  std::string failure;
};

/// Assembles k = 1..k_max. A failed level stops the scan; rows so far are kept.
GrowthScan growth_scan(int k_max, const AssemblyParams& params = {});

/// Least-squares line y = slope x + intercept.
std::pair<double, double> least_squares(const std::vector<double>& x,
                                        const std::vector<double>& y);

}  // namespace minsurf
