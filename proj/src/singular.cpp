#include "gapfield/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "gapfield/errors.hpp"

namespace gapfield::singular {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_exterior(const SpherePair& pair, const Vec3& x) {
  const Vec3 c1{pair.c1(), 0.0, 0.0};
  const Vec3 c2{pair.c2(), 0.0, 0.0};
  const double slack = 1.0 - 1e-12;
  if (norm(x - c1) < pair.r1 * slack || norm(x - c2) < pair.r2 * slack) {
    throw std::domain_error("h_eval: point lies strictly inside an inclusion");
  }
}

// signed alternating sum of q_j * f(x - p_j) accumulated in adjacent pairs;
// f returns the kernel value, tracks the nearest image distance
template <typename Term>
double paired_sum(const ImageChargeSystem& sys, Term&& term) {
  const std::int64_t pairs = sys.pair_count();
  double total = 0.0;
  for (std::int64_t k = pairs - 1; k >= 0; --k) {
    total += term(2 * k) - term(2 * k + 1);
  }
  return total;
}

struct GradAccum {
  double gx = 0.0, gy = 0.0, gz = 0.0;
  double min_dist2 = std::numeric_limits<double>::infinity();
};

// grad of Gamma(x - p) = -(x - p) / (4 pi |x - p|^3), weighted alternating charges
void accumulate_grad(const ImageChargeSystem& sys, const Vec3& x, double weight, GradAccum& acc) {
  const auto& p = sys.points;
  const auto& q = sys.charges;
  const std::int64_t n = sys.truncation_K;
  for (std::int64_t j = n; j >= 0; --j) {
    const double dx = x.x - p[static_cast<std::size_t>(j)];
    const double d2 = dx * dx + x.y * x.y + x.z * x.z;
    acc.min_dist2 = std::min(acc.min_dist2, d2);
    const double inv_d3 = 1.0 / (d2 * std::sqrt(d2));
    const double w = (j % 2 == 0 ? weight : -weight) * q[static_cast<std::size_t>(j)] * inv_d3;
    acc.gx -= w * dx;
    acc.gy -= w * x.y;
    acc.gz -= w * x.z;
  }
}

}  // namespace

double h_eval(const SpherePair& pair, const ImageChargeSystem& sys1,
              const ImageChargeSystem& sys2, const SeriesConstants& konst, const Vec3& x) {
  check_exterior(pair, x);
  const double guard2 = 1e-24 * pair.r_max() * pair.r_max();
  double min_d2 = std::numeric_limits<double>::infinity();
  auto kernel = [&x, &min_d2](const ImageChargeSystem& sys, std::int64_t j) {
    const double dx = x.x - sys.points[static_cast<std::size_t>(j)];
    const double d2 = dx * dx + x.y * x.y + x.z * x.z;
    min_d2 = std::min(min_d2, d2);
    return sys.charges[static_cast<std::size_t>(j)] / std::sqrt(d2);
  };
  const double s1 = paired_sum(sys1, [&](std::int64_t j) { return kernel(sys1, j); });
  const double s2 = paired_sum(sys2, [&](std::int64_t j) { return kernel(sys2, j); });
  if (min_d2 < guard2) {
    throw std::domain_error("h_eval: evaluation point within 1e-12*r_max of an image charge");
  }
  return (-konst.Q2 * s1 + konst.Q1 * s2) / (4.0 * kPi * konst.M);
}

Vec3 grad_h(const SpherePair& pair, const ImageChargeSystem& sys1, const ImageChargeSystem& sys2,
            const SeriesConstants& konst, const Vec3& x) {
  check_exterior(pair, x);
  GradAccum acc;
  const double inv_4pi_m = 1.0 / (4.0 * kPi * konst.M);
  accumulate_grad(sys1, x, -konst.Q2 * inv_4pi_m, acc);
  accumulate_grad(sys2, x, konst.Q1 * inv_4pi_m, acc);
  if (acc.min_dist2 < 1e-24 * pair.r_max() * pair.r_max()) {
    throw std::domain_error("grad_h: evaluation point within 1e-12*r_max of an image charge");
  }
  return {acc.gx, acc.gy, acc.gz};
}

FieldSample sample(const SpherePair& pair, const ImageChargeSystem& sys1,
                   const ImageChargeSystem& sys2, const SeriesConstants& konst, const Vec3& x) {
  FieldSample s;
  s.x = x;
  s.value = h_eval(pair, sys1, sys2, konst, x);
  s.gradient = grad_h(pair, sys1, sys2, konst, x);
  s.rho = rho(x);
  return s;
}

double h_gap(const SpherePair& pair, const SeriesConstants& konst) {
  return (konst.Q2 / pair.r1 + konst.Q1 / pair.r2) / (-4.0 * kPi * konst.M);
}

double h_gap_checked(const SpherePair& pair, const ImageChargeSystem& sys1,
                     const ImageChargeSystem& sys2, const SeriesConstants& konst) {
  const double gap = h_gap(pair, konst);
  // gap-facing poles of the two spheres
  const double h1 = h_eval(pair, sys1, sys2, konst, {pair.eps, 0.0, 0.0});
  const double h2 = h_eval(pair, sys1, sys2, konst, {-pair.eps, 0.0, 0.0});
  const double direct = h1 - h2;
  if (!(std::fabs(direct - gap) <= 1e-3 * std::fabs(gap))) {
    throw numeric_error("h_gap_checked: closed form " + std::to_string(gap) +
                        " inconsistent with direct evaluation " + std::to_string(direct));
  }
  return gap;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    nodes[i] = -z;
    nodes[n - 1 - i] = z;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

double flux_once(const SpherePair& pair, const ImageChargeSystem& sys1,
                 const ImageChargeSystem& sys2, const SeriesConstants& konst, int ball,
                 const QuadratureSpec& quad) {
  const double R = ball == 1 ? pair.r1 : pair.r2;
  const Vec3 center{ball == 1 ? pair.c1() : pair.c2(), 0.0, 0.0};
  const Vec3 gap_dir{ball == 1 ? -1.0 : 1.0, 0.0, 0.0};

  // polar panels in u = 1 - cos(theta) from the gap-facing pole, widths doubling
  // outward; the pole panel resolves the eps-scale concentration
  const double delta = pair.eps / R;
  std::vector<double> edges{0.0, std::min(quad.pole_panel_scale * delta, 2.0 / (1 << quad.min_panels))};
  while (edges.back() < 2.0) {
    edges.push_back(std::min(2.0, 2.0 * edges.back()));
  }

  std::vector<double> gl_x, gl_w;
  gauss_legendre(quad.nodes_per_panel, gl_x, gl_w);

  double total = 0.0;
  const double dphi = 2.0 * kPi / quad.azimuth;
  for (std::size_t panel = 0; panel + 1 < edges.size(); ++panel) {
    const double a = edges[panel], b = edges[panel + 1];
    for (int i = 0; i < quad.nodes_per_panel; ++i) {
      const double u = 0.5 * (a + b) + 0.5 * (b - a) * gl_x[i];
      const double w = 0.5 * (b - a) * gl_w[i];
      const double t = 1.0 - u;
      const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
      double ring = 0.0;
      for (int j = 0; j < quad.azimuth; ++j) {
        const double phi = (j + 0.5) * dphi;
        const Vec3 nu{t * gap_dir.x, st * std::cos(phi), st * std::sin(phi)};
        const Vec3 xs = center + R * nu;
        ring += dot(grad_h(pair, sys1, sys2, konst, xs), nu);
      }
      total += w * dphi * ring * R * R;
    }
  }
  return total;
}

}  // namespace

FluxEstimate flux(const SpherePair& pair, const ImageChargeSystem& sys1,
                  const ImageChargeSystem& sys2, const SeriesConstants& konst, int ball,
                  const QuadratureSpec& quad) {
  if (ball != 1 && ball != 2) {
    throw std::domain_error("flux: ball must be 1 or 2");
  }
  if (quad.nodes_per_panel * quad.min_panels < 16 || quad.azimuth < 32) {
    throw std::domain_error("flux: quadrature resolution below 16x32");
  }
  FluxEstimate est;
  est.value = flux_once(pair, sys1, sys2, konst, ball, quad);
  QuadratureSpec finer = quad;
  finer.nodes_per_panel += 8;
  est.refinement_delta = std::fabs(flux_once(pair, sys1, sys2, konst, ball, finer) - est.value);
  est.converged = est.refinement_delta <= 1e-2;
  return est;
}

bool in_gap_region(const SpherePair& pair, const Vec3& x) {
  const double logd = std::fabs(std::log(pair.gap_delta()));
  return rho(x) <= pair.r_max() / (logd * logd);
}

Vec3 grad_h_asymptotic(const SpherePair& pair, const Vec3& x) {
  if (!in_gap_region(pair, x)) {
    throw std::domain_error("grad_h_asymptotic: point outside the gap region R_delta");
  }
  const double r = rho(x);
  const double denom = pair.eps + 0.25 * (1.0 / pair.r1 + 1.0 / pair.r2) * r * r;
  const double mag = -(pair.r1 + pair.r2) /
                     (4.0 * kPi * pair.r1 * pair.r2 * std::fabs(std::log(pair.eps)) * denom);
  return {mag, 0.0, 0.0};
}

}  // namespace gapfield::singular
