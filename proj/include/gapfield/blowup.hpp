#ifndef GAPFIELD_BLOWUP_HPP
#define GAPFIELD_BLOWUP_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gapfield/constants.hpp"
#include "gapfield/geometry.hpp"
#include "gapfield/vec3.hpp"

// Harmonic polynomial backgrounds H, the background-dependent series constants
// C^H_min / C^H_max, the blowup factor Psi, the exact boundary potential-gap
// series, and the closed forms for the linear and cubic backgrounds.

namespace gapfield::blowup {

using constants::SeriesConstants;
using geometry::ImageChargeSystem;
using geometry::SpherePair;

struct Monomial {
  double coeff = 0.0;
  int px = 0;
  int py = 0;
  int pz = 0;
  int degree() const { return px + py + pz; }
};

class HarmonicBackground {
 public:
  explicit HarmonicBackground(std::vector<Monomial> monomials);

  // grammar: terms coeff*x1^a*x2^b*x3^c joined by +/-, whitespace-insensitive,
  // omitted exponent means 1, bare coefficients allowed; total degree <= 12.
  // Throws std::invalid_argument with a diagnostic on malformed input.
  static HarmonicBackground parse(std::string_view text);

  double operator()(const Vec3& x) const;
  double axial(double t) const;  // H(t, 0, 0)
  double value_at_origin() const { return value_at_origin_; }

  const std::vector<Monomial>& monomials() const { return monomials_; }
  // axial restriction with the constant removed: (coeff, power) with power >= 1
  std::vector<std::pair<double, int>> axial_monomials() const;
  // composition with x1 -> -x1
  HarmonicBackground mirrored() const;
  // monomials with py = pz = 0 only
  HarmonicBackground axial_restriction() const;

  std::string to_string() const;

 private:
  std::vector<Monomial> monomials_;
  double value_at_origin_ = 0.0;
};

struct LaplacianReport {
  bool harmonic = true;
  Monomial offending;  // a surviving Laplacian monomial when not harmonic
};

LaplacianReport laplacian_report(const HarmonicBackground& h);
bool laplacian_check(const HarmonicBackground& h);

struct CResult {
  double c_min = 0.0;
  double c_max = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t terms_used = 0;
};

// Per-k paired series for C^H_min and C^H_max with H(0) subtracted; explicit
// partial sums are closed with an Euler-Maclaurin tail per axial monomial.
// Throws numeric_error if the paired terms fail to reach the tolerance.
CResult c_min_max(const SpherePair& pair, const HarmonicBackground& h, double tol);

struct BlowupResult {
  double c_min = 0.0;
  double c_max = 0.0;
  double psi = 0.0;
  double gap_series = 0.0;      // u|_dB1 - u|_dB2 via the exact series
  double gap_asymptotic = 0.0;  // 2 Psi / |log eps|
  std::int64_t terms_used = 0;
};

// Psi = [psi(rmax/s) C^H_min + psi(rmin/s) C^H_max] / [psi(r2/s) + psi(r1/s)];
// gap fields are left NaN (use blowup_bundle for the full record)
BlowupResult psi_factor(const SpherePair& pair, const HarmonicBackground& h, double tol);

// psi_factor plus the potential-gap series and its asymptotic
BlowupResult blowup_bundle(const SpherePair& pair, const HarmonicBackground& h, double tol);

// Example closed forms for H = E0 x1 and H = x1^3 - 3 x1 x2^2 at r1 = 1, r2 = r
double psi_linear_closed(double r, double E0);
double psi_cubic_closed(double r);

// (Q2/M) sum_j (-1)^j q_{1,j} H(p_{1,j}) + (Q1/M) sum_j (-1)^{j+1} q_{2,j} H(p_{2,j}),
// H pre-normalized to H(0) = 0, summed in adjacent pairs
double potential_gap_series(const SpherePair& pair, const HarmonicBackground& h,
                            const SeriesConstants& konst, const ImageChargeSystem& sys1,
                            const ImageChargeSystem& sys2);

struct AverageFieldComparison {
  double asymptotic_formula = 0.0;  // 2 Psi / (eps |log eps|) form
  double literature_formula = 0.0;  // log(2 r1 r2 /((r1+r2) eps)) engineering form
};

// average field (u|_dB1 - u|_dB2)/eps for H = E0 x1, both published expressions
AverageFieldComparison average_field_compare(const SpherePair& pair, double E0);

}  // namespace gapfield::blowup

#endif
