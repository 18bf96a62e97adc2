#pragma once

#include "ahmass/fitting.hpp"
#include "ahmass/metric.hpp"

namespace ahmass {

// Numerical stand-in for the identification between the metric's chart and
// the reference chart: a radial translation beta fitted from the limit of
// s(r) e^{-r} / (c/2), plus the decay fit of the aligned warp difference.
struct Alignment {
  double beta = 0.0;
  RadialCurve arclength_map;  // identity for arclength inputs
  // Decay rate of the aligned difference in the invariant norm
  // |h|_ghat = |q(2+q)|; the APE admissibility threshold (n-1)/2 applies
  // to this rate. The coordinate difference s - shat decays one rate lower.
  DecayFit residual_rate;
  Interval aligned_domain{0.0, 0.0};
};

struct AlignOptions {
  double window_lo_frac = 0.6;
  double window_hi_frac = 0.95;
  int samples = 48;
};

// Fits beta and the residual decay. Throws when the input is not arclength,
// no plateau of s e^{-r} exists, or the fitted residual rate is <= 0.
Alignment align_to_reference(const RadialMetric& m, const ReferenceModel& ref,
                             const AlignOptions& opt = {});

// The metric expressed over the reference chart: cone = ref.cone and
// q(rhat) relative to ref, on [lo + beta, hi + beta].
RadialMetric aligned_view(const RadialMetric& m, const ReferenceModel& ref,
                          const Alignment& al);

}  // namespace ahmass
