#include "gapfield/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gapfield/errors.hpp"
#include "gapfield/specfun.hpp"

namespace gapfield::constants {

namespace {

// pairwise even/odd charge sums over the full truncation
struct ParitySums {
  double even = 0.0;
  double odd = 0.0;
};

ParitySums charge_sums(const ImageChargeSystem& sys) {
  ParitySums s;
  const auto& q = sys.charges;
  // summed smallest-first to limit rounding drift
  for (std::int64_t j = sys.truncation_K; j >= 0; --j) {
    (j % 2 == 0 ? s.even : s.odd) += q[static_cast<std::size_t>(j)];
  }
  return s;
}

double alternating_sum(const ImageChargeSystem& sys, double tol, double* tail_bound,
                       std::int64_t* terms_used) {
  const auto& q = sys.charges;
  const std::int64_t pairs = sys.pair_count();
  double total = 0.0;
  double prev_term = 0.0;
  for (std::int64_t k = 0; k < pairs; ++k) {
    const double term = q[2 * k] - q[2 * k + 1];
    total += term;
    if (k >= 4 && prev_term > 0.0 && term < prev_term) {
      const double ratio = term / prev_term;
      const double tail = 4.0 * term * ratio / (1.0 - ratio);
      if (term + tail < tol) {
        if (tail_bound) *tail_bound = term + tail;
        if (terms_used) *terms_used = 2 * (k + 1);
        return total;
      }
    }
    prev_term = term;
  }
  throw numeric_error("q_series: pair budget exhausted before reaching tol = " +
                      std::to_string(tol) + "; rebuild with a smaller tail target");
}

}  // namespace

std::pair<double, double> q_closed(const SpherePair& pair) {
  const double s = pair.r1 + pair.r2;
  const double Q1 = -(pair.r2 / s) * specfun::psi(pair.r2 / s);
  const double Q2 = -(pair.r1 / s) * specfun::psi(pair.r1 / s);
  return {Q1, Q2};
}

QSeriesResult q_series(const ImageChargeSystem& sys1, const ImageChargeSystem& sys2, double tol) {
  if (!(tol >= 1e-12)) {
    throw std::domain_error("q_series: tol must be >= 1e-12");
  }
  QSeriesResult r;
  double tail1 = 0.0, tail2 = 0.0;
  std::int64_t n1 = 0, n2 = 0;
  r.Q1 = alternating_sum(sys1, tol, &tail1, &n1);
  r.Q2 = alternating_sum(sys2, tol, &tail2, &n2);
  r.tail_bound = std::max(tail1, tail2);
  r.terms_used = n1 + n2;
  return r;
}

QSeriesResult q_series(const SpherePair& pair, double tol) {
  const auto sys1 = geometry::build_images_auto(pair, 1);
  const auto sys2 = geometry::build_images_auto(pair, 2);
  return q_series(sys1, sys2, tol);
}

MSeriesResult m_series([[maybe_unused]] const SpherePair& pair, const ImageChargeSystem& sys1,
                       const ImageChargeSystem& sys2, double Q1, double Q2, double tol) {
  if (!(tol >= 1e-12)) {
    throw std::domain_error("m_series: tol must be >= 1e-12");
  }
  const ParitySums s1 = charge_sums(sys1);
  const ParitySums s2 = charge_sums(sys2);
  MSeriesResult r;
  const double a = Q2 * s1.even + Q1 * s2.odd;
  const double b = Q1 * s2.even + Q2 * s1.odd;
  r.M = 0.5 * (a + b);
  r.decomposition_mismatch = std::fabs(a - b) / std::fabs(r.M);
  r.terms_used = sys1.truncation_K + sys2.truncation_K + 2;
  if (!(r.decomposition_mismatch <= 10.0 * tol)) {
    throw decomposition_mismatch_error(
        "m_series: the two decompositions of M disagree (relative mismatch " +
            std::to_string(r.decomposition_mismatch) + " > " + std::to_string(10.0 * tol) +
            "); image sequences are inconsistent with the Q factors",
        r.decomposition_mismatch);
  }
  return r;
}

MSeriesResult m_series(const SpherePair& pair, double tol) {
  const auto sys1 = geometry::build_images_auto(pair, 1);
  const auto sys2 = geometry::build_images_auto(pair, 2);
  const QSeriesResult q = q_series(sys1, sys2, tol);
  return m_series(pair, sys1, sys2, q.Q1, q.Q2, tol);
}

double m_asymptotic(const SpherePair& pair) {
  const double s = pair.r1 + pair.r2;
  return -0.5 * pair.r1 * pair.r2 / (s * s) * std::fabs(std::log(pair.eps)) *
         (specfun::psi(pair.r1 / s) + specfun::psi(pair.r2 / s));
}

SeriesConstants compute(const SpherePair& pair, const ImageChargeSystem& sys1,
                        const ImageChargeSystem& sys2, double tol) {
  const QSeriesResult q = q_series(sys1, sys2, tol);
  const MSeriesResult m = m_series(pair, sys1, sys2, q.Q1, q.Q2, tol);
  SeriesConstants c;
  c.Q1 = q.Q1;
  c.Q2 = q.Q2;
  c.M = m.M;
  c.method = Method::series;
  c.tail_bound = q.tail_bound;
  c.terms_used = q.terms_used + m.terms_used;
  return c;
}

SeriesConstants compute(const SpherePair& pair, double tol) {
  const auto sys1 = geometry::build_images_auto(pair, 1);
  const auto sys2 = geometry::build_images_auto(pair, 2);
  return compute(pair, sys1, sys2, tol);
}

}  // namespace gapfield::constants
