#ifndef GAPFIELD_SINGULAR_HPP
#define GAPFIELD_SINGULAR_HPP

#include "gapfield/constants.hpp"
#include "gapfield/geometry.hpp"
#include "gapfield/vec3.hpp"

// The singular function h of the two-sphere system: series evaluation of h and
// its gradient, the boundary potential gap, surface flux quadrature, and the
// narrow-gap asymptotic of the gradient.

namespace gapfield::singular {

using constants::SeriesConstants;
using geometry::ImageChargeSystem;
using geometry::SpherePair;

struct FieldSample {
  Vec3 x;
  double value = 0.0;
  Vec3 gradient;
  double rho = 0.0;
};

// potential of h at x (exterior to both open balls); throws std::domain_error
// strictly inside a ball or within 1e-12 * r_max of an image point
double h_eval(const SpherePair& pair, const ImageChargeSystem& sys1,
              const ImageChargeSystem& sys2, const SeriesConstants& konst, const Vec3& x);

// exact term-by-term gradient of the truncated series
Vec3 grad_h(const SpherePair& pair, const ImageChargeSystem& sys1, const ImageChargeSystem& sys2,
            const SeriesConstants& konst, const Vec3& x);

FieldSample sample(const SpherePair& pair, const ImageChargeSystem& sys1,
                   const ImageChargeSystem& sys2, const SeriesConstants& konst, const Vec3& x);

// h|_dB1 - h|_dB2 = (Q2/r1 + Q1/r2) / (-4 pi M); negative for this normalization
double h_gap(const SpherePair& pair, const SeriesConstants& konst);

// h_gap cross-checked against pole-to-pole direct evaluation; throws
// numeric_error if they disagree beyond 1e-3 relative
double h_gap_checked(const SpherePair& pair, const ImageChargeSystem& sys1,
                     const ImageChargeSystem& sys2, const SeriesConstants& konst);

struct QuadratureSpec {
  int nodes_per_panel = 16;  // Gauss-Legendre nodes per polar panel
  int azimuth = 64;          // trapezoid points around the axis
  double pole_panel_scale = 0.25;  // pole panel width ~ scale * (eps / R)
  int min_panels = 8;
};

struct FluxEstimate {
  double value = 0.0;
  double refinement_delta = 0.0;  // |value - refined value|
  bool converged = true;          // refinement_delta <= 1e-2
};

// surface integral of dh/dnu over the given sphere; expected close to
// +1 (ball 1) or -1 (ball 2). Polar panels are graded geometrically toward
// the gap-facing pole where the integrand concentrates.
FluxEstimate flux(const SpherePair& pair, const ImageChargeSystem& sys1,
                  const ImageChargeSystem& sys2, const SeriesConstants& konst, int ball,
                  const QuadratureSpec& quad = {});

// gap region R_delta: exterior points with rho(x) <= r_max |log(eps/r_max)|^-2
bool in_gap_region(const SpherePair& pair, const Vec3& x);

// narrow-gap gradient asymptotic
//   -(r1+r2) / (4 pi r1 r2 |log eps|) * 1/(eps + (1/4)(1/r1 + 1/r2) rho^2) * n;
// throws std::domain_error outside R_delta
Vec3 grad_h_asymptotic(const SpherePair& pair, const Vec3& x);

}  // namespace gapfield::singular

#endif
