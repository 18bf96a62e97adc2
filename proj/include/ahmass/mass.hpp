#pragma once

#include <vector>

#include "ahmass/alignment.hpp"

namespace ahmass {

struct MassSample {
  double R = 0.0;
  double adm = 0.0;
  double rv = 0.0;
  double combined = 0.0;  // adm + 2(n-1) rv, assembled at identical R

  static MassSample make(int n, double R, double adm, double rv) {
    return {R, adm, rv, adm + 2.0 * (n - 1.0) * rv};
  }
};

struct MassReport {
  int n = 3;
  std::string reference;
  double beta = 0.0;
  std::vector<MassSample> samples;
  double m_vr = 0.0;
  double err_estimate = 0.0;
  double s_action = 0.0;
  double s_action_err = 0.0;
  double scal_defect_integral = 0.0;
  double residual_rate = 0.0;  // fitted APE order of the aligned difference
  std::string extrapolation_model;
  std::vector<std::string> flags;

  bool flagged(const std::string& f) const {
    for (auto& g : flags)
      if (g == f) return true;
    return false;
  }
  bool divergent() const { return flagged("divergent+") || flagged("divergent-"); }
};

struct MassOptions {
  double r_hi_frac = 0.95;   // schedule cap as a fraction of the usable domain
  double r_hi_cap = 13.5;    // absolute cap on the largest sample radius
  int schedule_points = 12;
  double quad_tol = 1e-10;
  AlignOptions align;
};

// Boundary integrand of the mass at radius R in the aligned chart:
// omega_{n-1} shat^{n-1} [ -(shat'/shat) T - T' ], T = tr_ghat h.
double adm_boundary_term(const RadialMetric& g, const ReferenceModel& ref,
                         const Alignment& al, double R);

// omega_{n-1} [ int_{g ball} s^{n-1} - int_0^R shat^{n-1} ] in the aligned chart.
double renormalized_volume(const RadialMetric& g, const ReferenceModel& ref,
                           const Alignment& al, double R, double quad_tol = 1e-10);

// int_{B_R} (scal + n(n-1)) dV_g through the first-derivative (integrated by
// parts) form; exact on the reference.
double scal_defect_integral_upto(const RadialMetric& g, const ReferenceModel& ref,
                                 const Alignment& al, double R, double quad_tol = 1e-10);

// Prelimit of the renormalized action at radius R,
//   int_{B_R}(scal+n(n-1)) dV - adm(R) - 2(n-1) rv(R),
// assembled so that only first derivatives of the warp deviation enter.
double eh_action_prelimit(const RadialMetric& g, const ReferenceModel& ref,
                          const Alignment& al, double R, double quad_tol = 1e-10);

// Full report: joint-limit evaluation of adm + 2(n-1) rv on a geometric
// R-schedule, single-exponential tail extrapolation, action and defect
// integral limits, divergence classification.
MassReport volume_renormalized_mass(const RadialMetric& g, const ReferenceModel& ref,
                                    const MassOptions& opt = {});

// Same limits measured against a general radial reference metric (used by
// the additivity check). Only m_vr and the samples are filled.
MassReport volume_renormalized_mass_rel(const RadialMetric& g, const RadialMetric& g_mid,
                                        const MassOptions& opt = {});

double eh_action(const RadialMetric& g, const ReferenceModel& ref,
                 const MassOptions& opt = {});

// |m_ref(g) - m_mid(g) - m_ref(mid)|
double check_additivity(const RadialMetric& g, const RadialMetric& g_mid,
                        const ReferenceModel& ref, const MassOptions& opt = {});

// Compactly supported radial perturbation h = h_rad dr^2 + h_sph sigma.
struct RadialPerturbation {
  RadialCurve h_rad;  // may be invalid (zero)
  RadialCurve h_sph;  // sigma coefficient; may be invalid (zero)
};

// g + t h as a RadialMetric (regauged when h_rad != 0). Throws when the
// perturbed metric degenerates.
RadialMetric perturb_metric(const RadialMetric& g, const RadialPerturbation& h, double t);

struct VariationCheck {
  double analytic = 0.0;
  double finite_diff = 0.0;
  double fd_step = 0.0;
};

// dS[h] = -int < Ric - scal/2 g - (n-1)(n-2)/2 g, h > dV against Richardson FD.
VariationCheck first_variation_S(const RadialMetric& g, const RadialPerturbation& h,
                                 const ReferenceModel& ref, double t0 = 0.05,
                                 const MassOptions& opt = {});

// lhs = m_vr + 2(2pi - omega); rhs = int (scal+2) dV (chi(Mbar) = 2).
struct TwoDimIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  MassReport report;
};
TwoDimIdentity mass_identity_2d(const RadialMetric& g, double omega,
                                const MassOptions& opt = {});

}  // namespace ahmass
