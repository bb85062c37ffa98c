/*
 * minsurf: curvature ledgers for smoothed holomorphic curves in C^2.
 *
 * Plain C interface over the C++ core. Every call returns an msf_status;
 * on failure msf_last_error() holds a message for the calling thread.
 * Handles are opaque and must be released with the matching _destroy call.
 */
#ifndef MINSURF_MINSURF_H
#define MINSURF_MINSURF_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MINSURF_BUILDING)
#    define MSF_API __declspec(dllexport)
#  else
#    define MSF_API __declspec(dllimport)
#  endif
#else
#  define MSF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msf_status {
  MSF_OK = 0,
  MSF_ERR_INVALID_ARGUMENT = 1,
  MSF_ERR_NOT_IMMERSED = 2,
  MSF_ERR_DOMAIN = 3,
  MSF_ERR_BRACKET = 4,
  MSF_ERR_NONCONVERGENCE = 5,
  MSF_ERR_BUFFER_TOO_SMALL = 6,
  MSF_ERR_INTERNAL = 7
} msf_status;

MSF_API const char* msf_version(void);
MSF_API const char* msf_status_string(msf_status status);
/* Message of the last failed call on this thread ("" if none). */
MSF_API const char* msf_last_error(void);

typedef struct msf_complex {
  double re;
  double im;
} msf_complex;

/* ---- root family a_{k,j} = j/(3k) and p_k ------------------------------ */

typedef struct msf_family msf_family;

MSF_API msf_status msf_family_create(int k, msf_family** out);
MSF_API void msf_family_destroy(msf_family* family);
MSF_API int msf_family_k(const msf_family* family);
MSF_API size_t msf_family_size(const msf_family* family);
MSF_API msf_status msf_family_roots(const msf_family* family, double* out, size_t capacity);

typedef struct msf_poly_jet {
  msf_complex z;
  msf_complex p;
  msf_complex dp;
  msf_complex ddp;
} msf_poly_jet;

MSF_API msf_status msf_family_eval_jet(const msf_family* family, msf_complex z,
                                       msf_poly_jet* out);

typedef enum msf_quantity { MSF_QUANTITY_P = 0, MSF_QUANTITY_DP = 1, MSF_QUANTITY_DDP = 2 } msf_quantity;

typedef struct msf_bound_row {
  int k;
  msf_quantity quantity;
  double sampled_sup;
  double paper_bound;
  double margin;
  msf_complex argmax;
  int violated;
} msf_bound_row;

/* Fills exactly three rows (p, p', p''). grid_n >= 64. */
MSF_API msf_status msf_sup_bounds(const msf_family* family, int grid_n, msf_bound_row out[3]);

typedef struct msf_double_point {
  int j;
  double u0;
  double slope;          /* p'(a)/(2a) */
  double paper_slope;    /* sqrt(prod_{l != j} |a_j^2 - a_l^2|) */
  double measured_slope; /* symmetric chord along the image curve, offset 1e-5 */
} msf_double_point;

/* Writes min(k, capacity) entries; *count receives k. */
MSF_API msf_status msf_double_points(const msf_family* family, msf_double_point* out,
                                     size_t capacity, size_t* count);

MSF_API msf_status msf_parity_check(const msf_family* family, int samples, unsigned seed,
                                    int* pass, double* worst_relative);

/* ---- pointwise geometry of holomorphic charts -------------------------- */

typedef struct msf_chart_jet {
  msf_complex z;
  msf_complex f[2];
  msf_complex df[2];
  msf_complex ddf[2];
} msf_chart_jet;

typedef struct msf_geom_sample {
  double lambda;
  double darea;
  double K;
  double A2;
  double pos[4];
} msf_geom_sample;

typedef struct msf_boundary_sample {
  double theta;
  double kappa_g;
  double ds;
  double ambient_kappa;
} msf_boundary_sample;

/* 2-jet of G_k(z) = (z^2, p_k(z)). */
MSF_API msf_status msf_family_chart_jet(const msf_family* family, msf_complex z,
                                        msf_chart_jet* out);
MSF_API msf_status msf_geom_from_jet(const msf_chart_jet* jet, msf_geom_sample* out);
/* Circle |z - center| = rho through jet->z, counter-clockwise. */
MSF_API msf_status msf_chart_boundary_sample(const msf_chart_jet* jet, msf_complex center,
                                             double rho, msf_boundary_sample* out);
/* Finite-difference Gauss curvature oracle on G_k with stencil step h. */
MSF_API msf_status msf_family_curvature_fd(const msf_family* family, msf_complex z, double h,
                                           double* K);

/* ---- node-smoothing necks ---------------------------------------------- */

typedef struct msf_neck_params {
  double u0;
  double C;
  double eta;
  double r;
} msf_neck_params;

MSF_API msf_status msf_neck_jet(const msf_neck_params* neck, msf_complex s, msf_chart_jet* out);
MSF_API msf_status msf_neck_curvature_fd(const msf_neck_params* neck, msf_complex s, double h,
                                         double* K);

typedef struct msf_neck_mass {
  double low;
  double high;
  double area_low;
  double area_high;
  double error_estimate;
  int meets_ball;
  int inscribed_found;
  double inscribed_inner;
  double inscribed_outer;
  double circumscribed_inner;
  double circumscribed_outer;
} msf_neck_mass;

MSF_API msf_status msf_neck_curvature_mass(const msf_neck_params* neck, double tol,
                                           msf_neck_mass* out);

/* ---- assembled surfaces ------------------------------------------------- */

typedef struct msf_assembly_params {
  double tol;              /* per-integral quadrature tolerance, default 1e-8 */
  double eta;              /* <= 0: per-neck default */
  double r;                /* <= 0: per-neck default */
  const int* flattened;    /* double points kept as crossings (may be NULL) */
  size_t n_flattened;
  size_t max_cells;        /* 0: default budget (2^22 leaf cells) */
  int parallel;
} msf_assembly_params;

MSF_API void msf_assembly_params_default(msf_assembly_params* params);

typedef struct msf_ledger msf_ledger;

typedef struct msf_ledger_summary {
  int k;
  int necks;
  int genus;
  int chi;
  double area_unsmoothed;
  double intA2_unsmoothed;
  double area_immersed;
  double area_necks;
  double area_necks_low;
  double area_necks_high;
  double area_total;
  double intA2_immersed;
  double intA2_necks_low;
  double intA2_necks_high;
  double total_A2_low;
  double total_A2_mid;
  double total_A2_high;
  double boundary_length;
  double int_kappa;
  double predicted_A2;
  double printed_identity_A2;
  double combined_identity_A2;
  double gb_residual;
  double gb_tolerance;
  double gb_closure;
  double seam_kappa;
  double chart_gb_residual;
  double chart_gb_error;
  double quad_error;
  double bracket_slack;
  int bracket_consistent;
} msf_ledger_summary;

typedef struct msf_neck_record {
  int j;
  double u0;
  double slope;
  double eta;
  double r;
  double rho;
  double mass_low;
  double mass_high;
  double area_low;
  double area_high;
  double excised_A2;
  double excised_area;
  double seam_kappa;
} msf_neck_record;

/* k = 0 assembles the baseline chart (z^2, z). */
MSF_API msf_status msf_assemble(int k, const msf_assembly_params* params, msf_ledger** out);
MSF_API void msf_ledger_destroy(msf_ledger* ledger);
MSF_API msf_status msf_ledger_summary_get(const msf_ledger* ledger, msf_ledger_summary* out);
MSF_API size_t msf_ledger_neck_count(const msf_ledger* ledger);
MSF_API msf_status msf_ledger_neck(const msf_ledger* ledger, size_t index, msf_neck_record* out);

typedef struct msf_growth msf_growth;

typedef struct msf_growth_row {
  int k;
  int genus;
  double total_A2_low;
  double total_A2_mid;
  double total_A2_high;
  double area_total;
  double boundary_length;
  double int_kappa;
  double predicted_A2;
  double gb_residual;
  int bracket_consistent;
} msf_growth_row;

typedef struct msf_growth_summary {
  double slope;
  double intercept;
  double slope_over_8pi;
  double area_sup;
  int complete;
} msf_growth_summary;

/* Scans k = 1..k_max (k_max >= 3). When a level fails, *out still receives a
 * handle holding the rows completed so far and the failing status is
 * returned. */
MSF_API msf_status msf_growth_scan(int k_max, const msf_assembly_params* params,
                                   msf_growth** out);
MSF_API void msf_growth_destroy(msf_growth* scan);
MSF_API size_t msf_growth_row_count(const msf_growth* scan);
MSF_API msf_status msf_growth_row_get(const msf_growth* scan, size_t index, msf_growth_row* out);
MSF_API msf_status msf_growth_summary_get(const msf_growth* scan, msf_growth_summary* out);
/* Borrowed pointer, valid while the scan handle lives. */
MSF_API const msf_ledger* msf_growth_ledger(const msf_growth* scan, size_t index);
/* Failure message of an incomplete scan ("" when complete). */
MSF_API const char* msf_growth_failure(const msf_growth* scan);

#ifdef __cplusplus
}
#endif

#endif /* MINSURF_MINSURF_H */
