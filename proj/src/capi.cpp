#include "minsurf/minsurf.h"

#include <cmath>
#include <new>
#include <string>

#include "errors.hpp"
#include "holo_geom.hpp"
#include "neck_model.hpp"
#include "poly_family.hpp"
#include "quadrature.hpp"
#include "surface_assembly.hpp"

struct msf_family {
  minsurf::RootFamily impl;
};

struct msf_ledger {
  minsurf::CurvatureLedger impl;
};

struct msf_growth {
  minsurf::GrowthScan impl;
  std::vector<msf_ledger> ledgers;
};

namespace {

thread_local std::string g_last_error;

msf_status fail(msf_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <class F>
msf_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return MSF_OK;
  } catch (const minsurf::NonConvergence& e) {
    return fail(MSF_ERR_NONCONVERGENCE, e.what());
  } catch (const minsurf::NotImmersed& e) {
    return fail(MSF_ERR_NOT_IMMERSED, e.what());
  } catch (const minsurf::DomainError& e) {
    return fail(MSF_ERR_DOMAIN, e.what());
  } catch (const minsurf::BracketNotFound& e) {
    return fail(MSF_ERR_BRACKET, e.what());
  } catch (const minsurf::InvalidArgument& e) {
    return fail(MSF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MSF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MSF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MSF_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw minsurf::InvalidArgument(what);
}

minsurf::cplx to_cpp(msf_complex z) { return {z.re, z.im}; }
msf_complex to_c(minsurf::cplx z) { return {z.real(), z.imag()}; }

msf_chart_jet to_c(const minsurf::ChartJet& j) {
  msf_chart_jet out;
  out.z = to_c(j.z);
  for (int i = 0; i < 2; ++i) {
    out.f[i] = to_c(j.f[i]);
    out.df[i] = to_c(j.df[i]);
    out.ddf[i] = to_c(j.ddf[i]);
  }
  return out;
}

minsurf::ChartJet to_cpp(const msf_chart_jet& j) {
  minsurf::ChartJet out;
  out.z = to_cpp(j.z);
  for (int i = 0; i < 2; ++i) {
    out.f[i] = to_cpp(j.f[i]);
    out.df[i] = to_cpp(j.df[i]);
    out.ddf[i] = to_cpp(j.ddf[i]);
  }
  return out;
}

minsurf::Neck to_cpp(const msf_neck_params& n) { return {n.u0, n.C, n.eta, n.r}; }

minsurf::AssemblyParams to_cpp(const msf_assembly_params* p) {
  minsurf::AssemblyParams out;
  if (!p) return out;
  out.tol = p->tol;
  if (p->eta > 0.0) out.eta = p->eta;
  if (p->r > 0.0) out.r = p->r;
  if (p->flattened && p->n_flattened) out.flattened.assign(p->flattened, p->flattened + p->n_flattened);
  if (p->max_cells) out.max_cells = p->max_cells;
  out.parallel = p->parallel != 0;
  return out;
}

msf_ledger_summary summarize(const minsurf::CurvatureLedger& L) {
  msf_ledger_summary s;
  s.k = L.k;
  s.necks = L.necks;
  s.genus = L.genus;
  s.chi = L.chi;
  s.area_unsmoothed = L.area_unsmoothed;
  s.intA2_unsmoothed = L.intA2_unsmoothed;
  s.area_immersed = L.area_immersed;
  s.area_necks = L.area_necks;
  s.area_necks_low = L.area_necks_low;
  s.area_necks_high = L.area_necks_high;
  s.area_total = L.area_total();
  s.intA2_immersed = L.intA2_immersed;
  s.intA2_necks_low = L.intA2_necks_low;
  s.intA2_necks_high = L.intA2_necks_high;
  s.total_A2_low = L.total_A2_low();
  s.total_A2_mid = L.total_A2_mid();
  s.total_A2_high = L.total_A2_high();
  s.boundary_length = L.boundary_length;
  s.int_kappa = L.int_kappa;
  s.predicted_A2 = L.predicted_A2();
  s.printed_identity_A2 = L.printed_identity_A2();
  s.combined_identity_A2 = L.combined_identity_A2();
  s.gb_residual = L.gb_residual;
  s.gb_tolerance = L.gb_tolerance;
  s.gb_closure = L.gb_closure;
  s.seam_kappa = L.seam_kappa;
  s.chart_gb_residual = L.chart_gb_residual;
  s.chart_gb_error = L.chart_gb_error;
  s.quad_error = L.quad_error;
  s.bracket_slack = L.bracket_slack();
  s.bracket_consistent = L.bracket_consistent() ? 1 : 0;
  return s;
}

}  // namespace

extern "C" {

const char* msf_version(void) { return "0.1.0"; }

const char* msf_status_string(msf_status status) {
  switch (status) {
    case MSF_OK: return "ok";
    case MSF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MSF_ERR_NOT_IMMERSED: return "chart not immersed";
    case MSF_ERR_DOMAIN: return "outside chart domain";
    case MSF_ERR_BRACKET: return "bracket not found";
    case MSF_ERR_NONCONVERGENCE: return "numerical non-convergence";
    case MSF_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case MSF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* msf_last_error(void) { return g_last_error.c_str(); }

msf_status msf_family_create(int k, msf_family** out) {
  return guarded([&] {
    require(out != nullptr, "output handle pointer is null");
    *out = nullptr;
    *out = new msf_family{minsurf::make_family(k)};
  });
}

void msf_family_destroy(msf_family* family) { delete family; }

int msf_family_k(const msf_family* family) { return family ? family->impl.k() : 0; }

size_t msf_family_size(const msf_family* family) { return family ? family->impl.size() : 0; }

msf_status msf_family_roots(const msf_family* family, double* out, size_t capacity) {
  if (family && out && capacity < family->impl.size())
    return fail(MSF_ERR_BUFFER_TOO_SMALL, "root buffer smaller than 2k+1");
  return guarded([&] {
    require(family && out, "null argument");
    const auto roots = family->impl.roots();
    std::copy(roots.begin(), roots.end(), out);
  });
}

msf_status msf_family_eval_jet(const msf_family* family, msf_complex z, msf_poly_jet* out) {
  return guarded([&] {
    require(family && out, "null argument");
    const auto j = minsurf::eval_jet(family->impl, to_cpp(z));
    *out = {to_c(j.z), to_c(j.p), to_c(j.dp), to_c(j.ddp)};
  });
}

msf_status msf_sup_bounds(const msf_family* family, int grid_n, msf_bound_row out[3]) {
  return guarded([&] {
    require(family && out, "null argument");
    const auto rows = minsurf::sup_bounds_report(family->impl, grid_n);
    for (std::size_t i = 0; i < 3; ++i) {
      out[i].k = rows[i].k;
      out[i].quantity = static_cast<msf_quantity>(rows[i].quantity);
      out[i].sampled_sup = rows[i].sampled_sup;
      out[i].paper_bound = rows[i].paper_bound;
      out[i].margin = rows[i].margin;
      out[i].argmax = to_c(rows[i].argmax);
      out[i].violated = rows[i].violated ? 1 : 0;
    }
  });
}

msf_status msf_double_points(const msf_family* family, msf_double_point* out, size_t capacity,
                             size_t* count) {
  return guarded([&] {
    require(family && count, "null argument");
    require(out || capacity == 0, "null output buffer");
    const auto pts = minsurf::double_points(family->impl);
    *count = pts.size();
    for (std::size_t i = 0; i < pts.size() && i < capacity; ++i) {
      out[i] = {pts[i].j, pts[i].u0, pts[i].slope, pts[i].paper_slope,
                minsurf::measured_slope(family->impl, pts[i].j)};
    }
  });
}

msf_status msf_parity_check(const msf_family* family, int samples, unsigned seed, int* pass,
                            double* worst_relative) {
  return guarded([&] {
    require(family && pass, "null argument");
    require(samples >= 0, "sample count must be non-negative");
    const auto res = minsurf::parity_check(family->impl, samples, seed);
    *pass = res.pass ? 1 : 0;
    if (worst_relative) *worst_relative = res.worst_relative;
  });
}

msf_status msf_family_chart_jet(const msf_family* family, msf_complex z, msf_chart_jet* out) {
  return guarded([&] {
    require(family && out, "null argument");
    *out = to_c(minsurf::family_chart_jet(family->impl, to_cpp(z)));
  });
}

msf_status msf_geom_from_jet(const msf_chart_jet* jet, msf_geom_sample* out) {
  return guarded([&] {
    require(jet && out, "null argument");
    const auto g = minsurf::geom_from_jet(to_cpp(*jet));
    *out = {g.lambda, g.darea, g.K, g.A2, {g.pos[0], g.pos[1], g.pos[2], g.pos[3]}};
  });
}

msf_status msf_chart_boundary_sample(const msf_chart_jet* jet, msf_complex center, double rho,
                               msf_boundary_sample* out) {
  return guarded([&] {
    require(jet && out, "null argument");
    const auto b = minsurf::boundary_sample(to_cpp(*jet), to_cpp(center), rho);
    *out = {b.theta, b.kappa_g, b.ds, b.ambient_kappa};
  });
}

msf_status msf_family_curvature_fd(const msf_family* family, msf_complex z, double h, double* K) {
  return guarded([&] {
    require(family && K, "null argument");
    *K = minsurf::gauss_curvature_fd(minsurf::family_chart(family->impl), to_cpp(z), h);
  });
}

msf_status msf_neck_jet(const msf_neck_params* neck, msf_complex s, msf_chart_jet* out) {
  return guarded([&] {
    require(neck && out, "null argument");
    const minsurf::Neck n = to_cpp(*neck);
    n.validate();
    *out = to_c(minsurf::neck_jet(n, to_cpp(s)));
  });
}

msf_status msf_neck_curvature_fd(const msf_neck_params* neck, msf_complex s, double h,
                                 double* K) {
  return guarded([&] {
    require(neck && K, "null argument");
    const minsurf::Neck n = to_cpp(*neck);
    n.validate();
    const minsurf::Chart chart{[n](minsurf::cplx w) { return minsurf::neck_jet(n, w); },
                               [](minsurf::cplx w) { return w != minsurf::cplx{0.0, 0.0}; }};
    *K = minsurf::gauss_curvature_fd(chart, to_cpp(s), h);
  });
}

msf_status msf_neck_curvature_mass(const msf_neck_params* neck, double tol, msf_neck_mass* out) {
  return guarded([&] {
    require(neck && out, "null argument");
    const auto m = minsurf::neck_curvature_mass(to_cpp(*neck), tol);
    *out = {m.low,
            m.high,
            m.area_low,
            m.area_high,
            m.error_estimate,
            m.meets_ball ? 1 : 0,
            m.inscribed_found ? 1 : 0,
            m.region.inscribed.s_inner,
            m.region.inscribed.s_outer,
            m.region.circumscribed.s_inner,
            m.region.circumscribed.s_outer};
  });
}

void msf_assembly_params_default(msf_assembly_params* params) {
  if (!params) return;
  const minsurf::AssemblyParams d;
  params->tol = d.tol;
  params->eta = 0.0;
  params->r = 0.0;
  params->flattened = nullptr;
  params->n_flattened = 0;
  params->max_cells = d.max_cells;
  params->parallel = d.parallel ? 1 : 0;
}

msf_status msf_assemble(int k, const msf_assembly_params* params, msf_ledger** out) {
  return guarded([&] {
    require(out != nullptr, "output handle pointer is null");
    *out = nullptr;
    *out = new msf_ledger{minsurf::assemble(k, to_cpp(params))};
  });
}

void msf_ledger_destroy(msf_ledger* ledger) { delete ledger; }

msf_status msf_ledger_summary_get(const msf_ledger* ledger, msf_ledger_summary* out) {
  return guarded([&] {
    require(ledger && out, "null argument");
    *out = summarize(ledger->impl);
  });
}

size_t msf_ledger_neck_count(const msf_ledger* ledger) {
  return ledger ? ledger->impl.neck_records.size() : 0;
}

msf_status msf_ledger_neck(const msf_ledger* ledger, size_t index, msf_neck_record* out) {
  return guarded([&] {
    require(ledger && out, "null argument");
    require(index < ledger->impl.neck_records.size(), "neck index out of range");
    const auto& r = ledger->impl.neck_records[index];
    *out = {r.j,          r.u0,         r.slope,          r.eta,           r.r,
            r.rho,        r.mass.low,   r.mass.high,      r.mass.area_low, r.mass.area_high,
            r.excised_A2, r.excised_area, r.seam_kappa};
  });
}

msf_status msf_growth_scan(int k_max, const msf_assembly_params* params, msf_growth** out) {
  msf_status status = guarded([&] {
    require(out != nullptr, "output handle pointer is null");
    *out = nullptr;
    auto* scan = new msf_growth{minsurf::growth_scan(k_max, to_cpp(params)), {}};
    for (const auto& L : scan->impl.ledgers) scan->ledgers.push_back(msf_ledger{L});
    *out = scan;
  });
  if (status != MSF_OK || !*out || (*out)->impl.complete) return status;
  g_last_error = (*out)->impl.failure;
  return (*out)->impl.nonconvergence ? MSF_ERR_NONCONVERGENCE : MSF_ERR_INTERNAL;
}

void msf_growth_destroy(msf_growth* scan) { delete scan; }

size_t msf_growth_row_count(const msf_growth* scan) { return scan ? scan->impl.rows.size() : 0; }

msf_status msf_growth_row_get(const msf_growth* scan, size_t index, msf_growth_row* out) {
  return guarded([&] {
    require(scan && out, "null argument");
    require(index < scan->impl.rows.size(), "row index out of range");
    const auto& r = scan->impl.rows[index];
    *out = {r.k,          r.genus,      r.total_A2_low,    r.total_A2_mid,
            r.total_A2_high, r.area_total, r.boundary_length, r.int_kappa,
            r.predicted_A2, r.gb_residual, r.bracket_consistent ? 1 : 0};
  });
}

msf_status msf_growth_summary_get(const msf_growth* scan, msf_growth_summary* out) {
  return guarded([&] {
    require(scan && out, "null argument");
    const auto& s = scan->impl;
    *out = {s.slope, s.intercept, s.slope_over_8pi, s.area_sup, s.complete ? 1 : 0};
  });
}

const msf_ledger* msf_growth_ledger(const msf_growth* scan, size_t index) {
  if (!scan || index >= scan->ledgers.size()) return nullptr;
  return &scan->ledgers[index];
}

const char* msf_growth_failure(const msf_growth* scan) {
  return scan ? scan->impl.failure.c_str() : "";
}

}  // extern "C"
