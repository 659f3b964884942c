#ifndef GAPFIELD_FIELDASYM_HPP
#define GAPFIELD_FIELDASYM_HPP

#include <cstdint>
#include <vector>

#include "gapfield/blowup.hpp"
#include "gapfield/constants.hpp"
#include "gapfield/geometry.hpp"
#include "gapfield/vec3.hpp"

// The asymptotic electric field in the gap: the explicit main term, the axial
// peak value, and the singular-part reconstruction c * grad h for grid export
// and cross-validation. The bounded remainder grad g is not modeled.

namespace gapfield::fieldasym {

using blowup::HarmonicBackground;
using constants::SeriesConstants;
using geometry::ImageChargeSystem;
using geometry::SpherePair;

// rho window of the asymptotic formula: rho(x) <= r_max |log(eps/r_max)|^-2
bool region_ok(const SpherePair& pair, const Vec3& x);

// main term (1/|log eps|) Psi / (eps + (1/4)(1/r1 + 1/r2) rho(x)^2) * n;
// psi_value precomputed via blowup::psi_factor
Vec3 grad_u_main(const SpherePair& pair, double psi_value, const Vec3& x);

// convenience overload computing Psi; throws std::domain_error outside the window
Vec3 grad_u_main(const SpherePair& pair, const HarmonicBackground& h, const Vec3& x,
                 double tol = 1e-12);

// peak value Psi/(eps |log eps|) attained on the axis
double peak_axis_value(const SpherePair& pair, double psi_value);

// [(u|_dB2 - u|_dB1)/(h|_dB2 - h|_dB1)] * grad_h(x): the field up to the
// bounded remainder grad g
Vec3 grad_u_singular(const SpherePair& pair, const HarmonicBackground& h,
                     const SeriesConstants& konst, const ImageChargeSystem& sys1,
                     const ImageChargeSystem& sys2, const Vec3& x);

// per-point bundle of the asymptotic evaluation
struct AsymptoticField {
  Vec3 main_term;          // parallel to n = (1,0,0) by construction
  Vec3 singular_part;      // c * grad h reconstruction
  double peak_axis_value = 0.0;  // Psi/(eps |log eps|)
  bool region_ok = false;
};

AsymptoticField at_point(const SpherePair& pair, const HarmonicBackground& h,
                         const SeriesConstants& konst, const ImageChargeSystem& sys1,
                         const ImageChargeSystem& sys2, const Vec3& x, double tol = 1e-12);

// rectangular grid in a plane x1 = const, row-major: x2 outer, x3 inner
struct GridSpec {
  double x1 = 0.0;
  double x2_min = 0.0, x2_max = 0.0;
  int n2 = 1;
  double x3_min = 0.0, x3_max = 0.0;
  int n3 = 1;
};

struct FieldRow {
  Vec3 x;
  double rho = 0.0;
  Vec3 main;
  Vec3 sing;
  bool region_ok = false;
};

// rows in grid order; interior points carry zero fields and region_ok = false
std::vector<FieldRow> field_grid(const SpherePair& pair, const HarmonicBackground& h,
                                 const GridSpec& grid, double tol = 1e-9);

}  // namespace gapfield::fieldasym

#endif
