#ifndef GAPFIELD_GEOMETRY_HPP
#define GAPFIELD_GEOMETRY_HPP

#include <cstdint>
#include <vector>

#include "gapfield/vec3.hpp"

// Sphere-pair geometry, the reflections R_i across the sphere boundaries, the
// image point/charge sequences obtained by alternating reflection, the fixed
// points of the composed reflections, and the sequence diagnostics used by the
// truncation and scaling tests.

namespace gapfield::geometry {

// Two disjoint spheres with centers on the x1-axis, 2*eps apart:
//   ball 1: radius r1, center (r1+eps, 0, 0); ball 2: radius r2, center (-r2-eps, 0, 0).
struct SpherePair {
  double r1;
  double r2;
  double eps;

  SpherePair(double r1_, double r2_, double eps_);

  double c1() const { return r1 + eps; }
  double c2() const { return -(r2 + eps); }
  double r_max() const { return r1 > r2 ? r1 : r2; }
  double r_min() const { return r1 < r2 ? r1 : r2; }
  // r = r_min/r_max in (0, 1]
  double radius_ratio() const { return r_min() / r_max(); }
  // delta = eps/r_max
  double gap_delta() const { return eps / r_max(); }
};

// inversion of x across the sphere (center, radius); involution away from the center
Vec3 reflect(const Vec3& center, double radius, const Vec3& x);

// axial specialization used by the sequence recursions
inline double reflect_axial(double center, double radius, double x) {
  return center + radius * radius / (x - center);
}

struct FixedPoints {
  double p1;  // fixed point of R1 R2, inside ball 1 (positive axis)
  double p2;  // fixed point of R2 R1 = R2(p1), inside ball 2
};

// contraction iteration of R1 R2 from c1, run to its floating-point stall;
// satisfies |R1R2(p1) - p1| <= 1e-14 * r_max
FixedPoints fixed_points(const SpherePair& pair);

struct ImageChargeSystem {
  int family = 1;                   // 1: seeded at c1, 2: seeded at c2
  std::vector<double> points;       // axial coordinates p_{family,j}, j = 0..K
  std::vector<double> charges;      // q_{family,j}, q_0 = 1
  std::vector<double> multipliers;  // mu_{family,j}, mu_0 = 1
  std::int64_t truncation_K = 0;    // last stored index
  double tail_bound = 0.0;          // geometric bound on sum_{j>K} q_j

  std::int64_t pair_count() const { return (truncation_K + 1) / 2; }
};

// build `pairs` reflection pairs (indices 0..2*pairs+1); pairs <= 5e6
ImageChargeSystem build_images(const SpherePair& pair, int family, std::int64_t pairs);

// grow until the geometric charge-tail bound drops below `charge_tail`;
// max_pairs caps the growth (<= 1e7)
ImageChargeSystem build_images_auto(const SpherePair& pair, int family,
                                    double charge_tail = 1e-12,
                                    std::int64_t max_pairs = 10'000'000);

// dominant-range and truncation markers of the sequence analysis
std::int64_t n_dominant(const SpherePair& pair);  // N(delta), with C~ = 1
std::int64_t n_zero(const SpherePair& pair);      // N0(delta) = floor(|log delta|)
std::int64_t n_one(const SpherePair& pair);       // N1(delta) = floor(1/(delta |log delta|))

// leading-order sequence approximants Theta_{i,j}(r), r = r_min/r_max, in units of r_max.
// Family index follows the normalized labeling (family 1 = larger sphere).
double theta_even(int family, std::int64_t k, double r);
double theta_odd(int family, std::int64_t k, double r);

// The composed reflection R1 R2 restricted to the axis is a Mobius map; its
// iterates have the exact multiplier form
//   p_{1,2k} - p1 = y0 m^k (p1 - p2) / (1 - y0 m^k).
// log_even_offset returns log(p_{1,2k} - p1) in units of r_max, stable for any k.
struct MobiusForm {
  double p1 = 0.0;
  double p2 = 0.0;
  double multiplier = 0.0;  // m = F'(p1) in (0,1)
  double y0 = 0.0;          // (c1-p1)/(c1-p2)
};
MobiusForm mobius_form(const SpherePair& pair);
double even_offset(const MobiusForm& mf, std::int64_t k);      // p_{1,2k} - p1, may underflow
double log_even_offset(const MobiusForm& mf, std::int64_t k);  // log of the above

struct DiagnosticsBundle {
  double p_fixed_1 = 0.0;
  double p_fixed_2 = 0.0;
  std::int64_t N_delta = 0;
  std::int64_t N0_delta = 0;
  std::int64_t N1_delta = 0;
  std::vector<double> theta;   // Theta_{f,j}(r) for the system's family, j = 0..2N+1
  double A1 = 0.0, A2 = 0.0;       // leading-order subsequence contraction rates
  double B1 = 0.0, B2 = 0.0;       // leading-order offset coefficients
  double multiplier = 0.0;         // exact Mobius multiplier of R1 R2
  double lower_shape_slack = 1.0;  // fitted slack of the offset lower-bound shape, >= 1
};

// requires system.pair_count() >= N1(delta)
DiagnosticsBundle diagnostics(const SpherePair& pair, const ImageChargeSystem& system);

}  // namespace gapfield::geometry

#endif
