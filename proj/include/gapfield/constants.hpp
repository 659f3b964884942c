#ifndef GAPFIELD_CONSTANTS_HPP
#define GAPFIELD_CONSTANTS_HPP

#include <cstdint>
#include <utility>

#include "gapfield/geometry.hpp"

// The series constants Q1, Q2 and M of the image-charge representation,
// computed both by truncated summation and by the digamma closed forms, with
// a built-in consistency check between the two decompositions of M.

namespace gapfield::constants {

using geometry::ImageChargeSystem;
using geometry::SpherePair;

enum class Method { closed_form, series };

struct SeriesConstants {
  double Q1 = 0.0;
  double Q2 = 0.0;
  double M = 0.0;
  Method method = Method::series;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

// Q1 = -(r2/s) psi(r2/s), Q2 = -(r1/s) psi(r1/s), s = r1 + r2; both positive
std::pair<double, double> q_closed(const SpherePair& pair);

struct QSeriesResult {
  double Q1 = 0.0;
  double Q2 = 0.0;
  double tail_bound = 0.0;
  std::int64_t terms_used = 0;
};

// alternating sums in adjacent positive pairs q_{i,2k} - q_{i,2k+1}, stopped
// when the pair term plus its geometric tail bound drops below tol
QSeriesResult q_series(const SpherePair& pair, double tol);
QSeriesResult q_series(const ImageChargeSystem& sys1, const ImageChargeSystem& sys2, double tol);

struct MSeriesResult {
  double M = 0.0;                        // mean of the two decompositions
  double decomposition_mismatch = 0.0;   // |A - B| / |M|
  std::int64_t terms_used = 0;
};

// M by both of its decompositions, evaluated from the systems' full sums with
// the given Q factors; throws decomposition_mismatch_error beyond 10*tol
MSeriesResult m_series(const SpherePair& pair, const ImageChargeSystem& sys1,
                       const ImageChargeSystem& sys2, double Q1, double Q2, double tol);

// convenience: builds both systems at tail 1e-12 and the Q factors at tol
MSeriesResult m_series(const SpherePair& pair, double tol);

// leading term -(1/2) r1 r2/(r1+r2)^2 |log eps| (psi(r1/s) + psi(r2/s))
double m_asymptotic(const SpherePair& pair);

// full pipeline: series Q and M from freshly built systems
SeriesConstants compute(const SpherePair& pair, double tol = 1e-9);
SeriesConstants compute(const SpherePair& pair, const ImageChargeSystem& sys1,
                        const ImageChargeSystem& sys2, double tol = 1e-9);

}  // namespace gapfield::constants

#endif
