#include "gapfield/geometry.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gapfield/errors.hpp"

namespace gapfield::geometry {

namespace {

constexpr std::int64_t kMaxPairs = 10'000'000;
constexpr std::int64_t kMaxFixedPointIters = 100'000'000;

}  // namespace

SpherePair::SpherePair(double r1_, double r2_, double eps_) : r1(r1_), r2(r2_), eps(eps_) {
  if (!(std::isfinite(r1) && std::isfinite(r2) && std::isfinite(eps)) || r1 <= 0.0 || r2 <= 0.0 ||
      eps <= 0.0) {
    throw std::domain_error("SpherePair: radii and half-gap must be finite and positive");
  }
  if (!(eps < r_min() / 10.0)) {
    throw std::domain_error("SpherePair: requires eps < min(r1, r2)/10, got eps = " +
                            std::to_string(eps));
  }
}

Vec3 reflect(const Vec3& center, double radius, const Vec3& x) {
  const Vec3 d = x - center;
  const double d2 = norm2(d);
  if (d2 == 0.0) {
    throw std::domain_error("reflect: point coincides with the sphere center");
  }
  return center + (radius * radius / d2) * d;
}

FixedPoints fixed_points(const SpherePair& pair) {
  const double c1 = pair.c1();
  const double c2 = pair.c2();
  double x = c1;
  for (std::int64_t it = 0; it < kMaxFixedPointIters; ++it) {
    const double y = reflect_axial(c2, pair.r2, x);
    const double xn = reflect_axial(c1, pair.r1, y);
    if (!(xn < x)) break;  // stall of the monotone contraction
    x = xn;
    if (it + 1 == kMaxFixedPointIters) {
      throw numeric_error("fixed_points: reflection iteration failed to contract");
    }
  }
  const double residual = std::fabs(reflect_axial(c1, pair.r1, reflect_axial(c2, pair.r2, x)) - x);
  if (!(residual <= 1e-14 * pair.r_max())) {
    throw numeric_error("fixed_points: residual " + std::to_string(residual) + " above tolerance");
  }
  return {x, reflect_axial(c2, pair.r2, x)};
}

namespace {

struct FamilyFrame {
  double c_own, c_oth, r_own, r_oth;
  double own_dir;  // family 1 lives on the positive axis, family 2 mirrored
};

FamilyFrame family_frame(const SpherePair& pair, int family) {
  if (family != 1 && family != 2) {
    throw std::domain_error("build_images: family must be 1 or 2");
  }
  if (family == 1) return {pair.c1(), pair.c2(), pair.r1, pair.r2, 1.0};
  return {pair.c2(), pair.c1(), pair.r2, pair.r1, -1.0};
}

void seed_system(ImageChargeSystem& sys, int family, const FamilyFrame& f) {
  sys.family = family;
  sys.points.assign(1, f.c_own);
  sys.charges.assign(1, 1.0);
  sys.multipliers.assign(1, 1.0);
}

// append indices up to 2*pairs+1, clamping each subsequence monotone
void extend_system(ImageChargeSystem& sys, const FamilyFrame& f, std::int64_t pairs) {
  const std::int64_t count = 2 * pairs + 2;
  sys.points.reserve(count);
  sys.charges.reserve(count);
  sys.multipliers.reserve(count);
  for (std::int64_t j = sys.points.size(); j < count; ++j) {
    const double prev = sys.points[j - 1];
    double pj, mu;
    if (j % 2 == 1) {
      pj = reflect_axial(f.c_oth, f.r_oth, prev);
      mu = f.r_oth / std::fabs(f.c_oth - prev);
      if (j >= 3) {  // odd subsequence is monotone toward the far fixed point
        const double lim = sys.points[j - 2];
        pj = f.own_dir > 0 ? std::max(pj, lim) : std::min(pj, lim);
      }
    } else {
      pj = reflect_axial(f.c_own, f.r_own, prev);
      mu = f.r_own / std::fabs(f.c_own - prev);
      const double lim = sys.points[j - 2];
      pj = f.own_dir > 0 ? std::min(pj, lim) : std::max(pj, lim);
    }
    sys.points.push_back(pj);
    sys.multipliers.push_back(mu);
    sys.charges.push_back(sys.charges[j - 1] * mu);
  }
  sys.truncation_K = count - 1;
}

// geometric bound on the dropped charge mass, from the same-parity ratio
double charge_tail_bound(const ImageChargeSystem& sys) {
  const std::size_t count = sys.charges.size();
  const double rho_hat = sys.charges[count - 1] / sys.charges[count - 3];
  if (rho_hat < 1.0) {
    return (sys.charges[count - 2] + sys.charges[count - 1]) * rho_hat / (1.0 - rho_hat);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

ImageChargeSystem build_images(const SpherePair& pair, int family, std::int64_t pairs) {
  if (pairs < 1 || pairs > kMaxPairs) {
    throw std::domain_error("build_images: pair count out of range [1, 1e7]");
  }
  const FamilyFrame f = family_frame(pair, family);
  ImageChargeSystem sys;
  seed_system(sys, family, f);
  extend_system(sys, f, pairs);
  sys.tail_bound = charge_tail_bound(sys);
  return sys;
}

ImageChargeSystem build_images_auto(const SpherePair& pair, int family, double charge_tail,
                                    std::int64_t max_pairs) {
  const std::int64_t cap = std::min(max_pairs, kMaxPairs);
  const FamilyFrame f = family_frame(pair, family);
  ImageChargeSystem sys;
  seed_system(sys, family, f);
  // grow one pair at a time so truncation stops right at the tail target,
  // short of the floating-point stall of the point recursion
  for (std::int64_t pairs = std::min<std::int64_t>(8, cap);; ++pairs) {
    extend_system(sys, f, pairs);
    sys.tail_bound = charge_tail_bound(sys);
    if (sys.tail_bound <= charge_tail) return sys;
    if (pairs >= cap) {
      throw numeric_error("build_images_auto: tail target not reached within the pair budget");
    }
  }
}

std::int64_t n_dominant(const SpherePair& pair) {
  const double r = pair.radius_ratio();
  const double delta = pair.gap_delta();
  return static_cast<std::int64_t>(
      std::ceil(std::log(2.0) / 8.0 * std::sqrt(r / (r + 1.0)) / std::sqrt(delta)));
}

std::int64_t n_zero(const SpherePair& pair) {
  return static_cast<std::int64_t>(std::floor(std::fabs(std::log(pair.gap_delta()))));
}

std::int64_t n_one(const SpherePair& pair) {
  const double delta = pair.gap_delta();
  return static_cast<std::int64_t>(std::floor(1.0 / (delta * std::fabs(std::log(delta)))));
}

double theta_even(int family, std::int64_t k, double r) {
  return family == 1 ? r / (k * (r + 1.0) + r) : 1.0 / (k * (r + 1.0) + 1.0);
}

double theta_odd(int family, std::int64_t k, double r) {
  return family == 1 ? r / ((k + 1.0) * (r + 1.0)) : 1.0 / ((k + 1.0) * (r + 1.0));
}

MobiusForm mobius_form(const SpherePair& pair) {
  const FixedPoints fp = fixed_points(pair);
  const double c1 = pair.c1();
  const double c2 = pair.c2();
  // p1, p2 are common inverse points: (p1-c1)(p2-c1) = r1^2, (p1-c2)(p2-c2) = r2^2.
  // Evaluate p2-c2 as r2^2/(p1-c2) to dodge the cancellation in the small difference.
  const double a = (fp.p1 - c1) / pair.r1;
  const double b = (pair.r2 / (fp.p1 - c2));
  MobiusForm mf;
  mf.p1 = fp.p1;
  mf.p2 = fp.p2;
  mf.multiplier = (a * b) * (a * b);
  mf.y0 = (c1 - fp.p1) / (c1 - fp.p2);
  return mf;
}

double log_even_offset(const MobiusForm& mf, std::int64_t k) {
  const double ln_yk = std::log(mf.y0) + static_cast<double>(k) * std::log(mf.multiplier);
  const double yk = std::exp(ln_yk);
  return ln_yk + std::log(mf.p1 - mf.p2) - std::log1p(-yk);
}

double even_offset(const MobiusForm& mf, std::int64_t k) {
  return std::exp(log_even_offset(mf, k));
}

DiagnosticsBundle diagnostics(const SpherePair& pair, const ImageChargeSystem& system) {
  DiagnosticsBundle d;
  const FixedPoints fp = fixed_points(pair);
  d.p_fixed_1 = fp.p1;
  d.p_fixed_2 = fp.p2;
  d.N_delta = n_dominant(pair);
  d.N0_delta = n_zero(pair);
  d.N1_delta = n_one(pair);
  if (system.pair_count() < d.N1_delta) {
    throw std::invalid_argument("diagnostics: system truncated below N1(delta)");
  }

  const bool swapped = pair.r2 > pair.r1;  // normalized labeling: family 1 = larger sphere
  const double r = pair.radius_ratio();
  const double delta = pair.gap_delta();
  const int normalized_family = swapped ? 3 - system.family : system.family;

  const std::int64_t theta_count = std::min<std::int64_t>(2 * d.N_delta + 2, system.truncation_K + 1);
  d.theta.reserve(theta_count);
  for (std::int64_t j = 0; j < theta_count; ++j) {
    d.theta.push_back(j % 2 == 0 ? theta_even(normalized_family, j / 2, r)
                                 : theta_odd(normalized_family, (j - 1) / 2, r));
  }

  d.A1 = d.A2 = 1.0 + 4.0 * std::sqrt((r + 1.0) * delta / r);
  d.B1 = 0.25 * std::sqrt((r + 1.0) / (r * delta));
  d.B2 = -d.B1;

  // Mobius form of the normalized pair (mirror-invariant distances)
  const SpherePair normalized(pair.r_max(), pair.r_min(), pair.eps);
  const MobiusForm mf = mobius_form(normalized);
  d.multiplier = mf.multiplier;

  // fitted slack of the offset lower bound 2 sqrt(r delta/(r+1)) A1^-k
  const double log_rhs0 = std::log(2.0 * std::sqrt(r * delta / (r + 1.0)));
  const double log_a_hat = std::log(d.A1);
  const double log_rmax = std::log(pair.r_max());
  double worst = 0.0;
  std::int64_t k = 1;
  while (k <= d.N1_delta) {
    const double log_lhs = log_even_offset(mf, k) - log_rmax;
    const double log_rhs = log_rhs0 - static_cast<double>(k) * log_a_hat;
    worst = std::max(worst, log_rhs - log_lhs);
    k = (k < 64) ? k + 1 : k + std::max<std::int64_t>(1, k / 8);
  }
  d.lower_shape_slack = std::max(1.0, std::exp(worst));
  return d;
}

}  // namespace gapfield::geometry
