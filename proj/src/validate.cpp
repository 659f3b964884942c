#include "gapfield/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gapfield/blowup.hpp"
#include "gapfield/constants.hpp"
#include "gapfield/errors.hpp"
#include "gapfield/fieldasym.hpp"
#include "gapfield/geometry.hpp"
#include "gapfield/singular.hpp"
#include "gapfield/specfun.hpp"

namespace gapfield::validate {

namespace {

constexpr double kPi = 3.14159265358979323846;

using geometry::ImageChargeSystem;
using geometry::SpherePair;

struct Harness {
  const Options& opt;
  std::vector<CheckResult> results;

  // pass iff measured <= required
  void bound(const std::string& name, double measured, double required,
             const std::string& note = "") {
    results.push_back({name, measured <= required, measured, required, note});
  }
  void flag(const std::string& name, bool ok, double measured, double required,
            const std::string& note = "") {
    results.push_back({name, ok, measured, required, note});
  }

  std::vector<double> eps_grid(std::initializer_list<double> full) const {
    std::vector<double> g;
    for (double e : full) {
      if (!opt.quick || e >= 1e-4) g.push_back(e);
    }
    return g;
  }
};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (!(v[i] > v[i + 1])) return false;
  }
  return true;
}

// ---- specfun ----

void check_specfun(Harness& h) {
  double worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double x = 50.0 * i / 200.0;
    worst = std::max(worst,
                     std::fabs(specfun::digamma(x + 1.0) - specfun::digamma(x) - 1.0 / x));
  }
  h.bound("specfun.recurrence", worst, 1e-12);

  worst = 0.0;
  for (int i = 1; i < 40; ++i) {
    const double x = i / 40.0;
    const double s = std::sin(kPi * x);
    worst = std::max(worst, std::fabs(specfun::polygamma(1, x) + specfun::polygamma(1, 1.0 - x) -
                                      kPi * kPi / (s * s)));
  }
  h.bound("specfun.reflection", worst, 1e-9);

  // direct summation sum_{k>=0} n!/(k+x)^{n+1} with integral tail
  worst = 0.0;
  for (int n : {1, 3}) {
    for (int i = 0; i < 20; ++i) {
      const double x = 0.05 + 2.5 * i / 19.0;
      const long N = 200000;
      double s = 0.0;
      for (long k = N - 1; k >= 0; --k) {
        s += (n == 1) ? 1.0 / ((k + x) * (k + x)) : 6.0 / std::pow(k + x, 4);
      }
      const double Q = N + x;
      s += (n == 1) ? 1.0 / Q + 0.5 / (Q * Q) : 2.0 / std::pow(Q, 3) + 3.0 / std::pow(Q, 4);
      const double v = specfun::polygamma(n, x);
      worst = std::max(worst, std::fabs(v - s) / std::fabs(s));
    }
  }
  h.bound("specfun.series_agreement", worst, 1e-9);
}

// ---- geometry ----

void check_geometry(Harness& h) {
  // strict interleaving where offsets resolve above 1e-12 * r_max; weak beyond
  bool ok = true;
  double worst_violation = 0.0;
  for (double r : {0.25, 0.5, 1.0}) {
    for (double delta : h.eps_grid({1e-3, 1e-4, 1e-5})) {
      const SpherePair pair(1.0, r, delta);
      const auto fp = geometry::fixed_points(pair);
      const auto sys = geometry::build_images_auto(pair, 1);
      const double floor_ = 1e-12 * pair.r_max();
      for (std::int64_t k = 1; k < sys.pair_count(); ++k) {
        const double even = sys.points[2 * k], odd = sys.points[2 * k + 1];
        bool fine = even <= sys.points[2 * k - 2] && odd >= sys.points[2 * k - 1] &&
                    fp.p2 < 0.0 && 0.0 < fp.p1 && even >= fp.p1 && odd <= fp.p2;
        if (even - fp.p1 > floor_ && fp.p2 - odd > floor_) {
          fine = fine && even < sys.points[2 * k - 2] && odd > sys.points[2 * k - 1] &&
                 odd < fp.p2 && fp.p1 < even;
        }
        if (!fine) {
          ok = false;
          worst_violation = static_cast<double>(k);
        }
      }
    }
  }
  h.flag("geometry.monotone_interleaving", ok, worst_violation, 0.0);

  // max_k |P_{1,2k} - Theta| / sqrt(r delta/(r+1)) stays bounded along delta
  bool shape_ok = true;
  double worst_ratio = 0.0;
  for (double r : {0.25, 0.5, 1.0}) {
    std::vector<double> ratios;
    for (double delta : h.eps_grid({1e-3, 1e-4, 1e-5, 1e-6})) {
      const SpherePair pair(1.0, r, delta);
      const std::int64_t N = geometry::n_dominant(pair);
      const auto sys = geometry::build_images(pair, 1, std::max<std::int64_t>(N + 2, 8));
      const double scale = std::sqrt(r * delta / (r + 1.0));
      double mx = 0.0;
      for (std::int64_t k = 0; k <= N; ++k) {
        mx = std::max(mx, std::fabs(sys.points[2 * k] - geometry::theta_even(1, k, r)) / scale);
      }
      ratios.push_back(mx);
      worst_ratio = std::max(worst_ratio, mx);
    }
    if (ratios.back() > 2.0 * ratios.front() + 1.0) shape_ok = false;
  }
  h.flag("geometry.theta_tracking", shape_ok && worst_ratio <= 10.0, worst_ratio, 10.0);

  // offset lower-bound shape: fitted slack finite and not growing as delta shrinks
  for (double r : {0.25, 0.5, 1.0}) {
    std::vector<double> slacks;
    for (double delta : h.eps_grid({1e-3, 1e-4, 1e-5, 1e-6})) {
      const SpherePair pair(1.0, r, delta);
      const auto sys = geometry::build_images(
          pair, 1, std::max<std::int64_t>(geometry::n_one(pair), 8));
      slacks.push_back(geometry::diagnostics(pair, sys).lower_shape_slack);
    }
    std::ostringstream name;
    name << "geometry.offset_lower_shape_r" << r;
    h.flag(name.str(), slacks.back() <= slacks.front() * 1.25, slacks.back(),
           slacks.front() * 1.25, "fitted slack");
  }

  // terminal decay bound at N1(delta), checked in log space
  bool decay_ok = true;
  double worst_log_excess = -1e300;
  for (double r : {0.25, 0.5, 1.0}) {
    for (double delta : h.eps_grid({1e-3, 1e-4, 1e-5, 1e-6})) {
      const SpherePair pair(1.0, r, delta);
      const auto mf = geometry::mobius_form(pair);
      const double lhs = geometry::log_even_offset(mf, geometry::n_one(pair));
      const double rhs =
          -std::sqrt((r + 1.0) / r) / (std::sqrt(delta) * std::fabs(std::log(delta)));
      worst_log_excess = std::max(worst_log_excess, lhs - rhs);
      if (lhs > rhs) decay_ok = false;
    }
  }
  h.flag("geometry.offset_terminal_decay", decay_ok, worst_log_excess, 0.0,
         "log(offset) - log(bound)");

  // involution + defining identity + charge positivity, randomized probes
  std::mt19937 rng(h.opt.seed);
  std::uniform_real_distribution<double> unit(0.1, 3.0);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  double worst_inv = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 c{coord(rng), coord(rng), coord(rng)};
    const double radius = unit(rng);
    Vec3 x{coord(rng), coord(rng), coord(rng)};
    if (norm(x - c) < 1e-3) x.x += 1.0;
    const Vec3 xr = geometry::reflect(c, radius, x);
    const Vec3 back = geometry::reflect(c, radius, xr);
    worst_inv = std::max(worst_inv, norm(back - x) / std::max(1.0, norm(x)));
    const double prod = norm(xr - c) * norm(x - c);
    worst_inv = std::max(worst_inv, std::fabs(prod - radius * radius) / (radius * radius));
  }
  bool charges_ok = true;
  for (int i = 0; i < 16; ++i) {
    const double r1 = unit(rng), r2 = unit(rng);
    const double eps = 0.05 * std::min(r1, r2) * (0.1 + 0.9 * unit(rng) / 3.0);
    const auto sys = geometry::build_images(SpherePair(r1, r2, eps), 1 + (i % 2), 64);
    for (std::size_t j = 1; j < sys.charges.size(); ++j) {
      if (!(sys.charges[j] > 0.0 && sys.charges[j] <= sys.charges[j - 1])) charges_ok = false;
    }
  }
  h.flag("geometry.involution_probes", charges_ok && worst_inv <= 1e-12, worst_inv, 1e-12);

  // N0 << N << N1 once the asymptotic ordering has set in (delta <= 1e-5)
  if (!h.opt.quick) {
    bool order_ok = true;
    for (double r : {0.25, 0.5, 1.0}) {
      for (double delta : {1e-5, 1e-6}) {
        const SpherePair pair(1.0, r, delta);
        if (!(geometry::n_zero(pair) < geometry::n_dominant(pair) &&
              geometry::n_dominant(pair) < geometry::n_one(pair))) {
          order_ok = false;
        }
      }
    }
    h.flag("geometry.n_ordering", order_ok, order_ok ? 1.0 : 0.0, 1.0);
  }
}

// ---- constants ----

void check_constants(Harness& h) {
  // closed form vs series across the r grid, residual shrinking along delta
  double final_worst = 0.0;
  bool monotone = true;
  const auto deltas = h.eps_grid({1e-4, 1e-5, 1e-6});
  for (double r : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    std::vector<double> residuals;
    for (double delta : deltas) {
      const SpherePair pair(1.0, r, delta);
      const auto qs = constants::q_series(pair, h.opt.tol);
      const auto [q1c, q2c] = constants::q_closed(pair);
      residuals.push_back(std::max(std::fabs(qs.Q1 - q1c) / q1c, std::fabs(qs.Q2 - q2c) / q2c));
    }
    if (deltas.size() > 1 && !strictly_decreasing(residuals)) monotone = false;
    final_worst = std::max(final_worst, residuals.back());
  }
  h.flag("constants.closed_vs_series", monotone && final_worst <= (h.opt.quick ? 2e-3 : 1e-3),
         final_worst, h.opt.quick ? 2e-3 : 1e-3);

  // est Q1 / est Q2 sandwich on a 50-point ratio grid
  bool sandwich = true;
  for (int i = 1; i <= 50; ++i) {
    const double r = i / 50.0;
    const SpherePair pair(1.0, r, 1e-4);
    const auto [q1, q2] = constants::q_closed(pair);
    const double s = 1.0 + r;
    if (!(1.0 / s <= q1 && q1 <= 2.0 / s && r / s <= q2 && q2 <= 2.0 * r / s)) sandwich = false;
  }
  h.flag("constants.bound_sandwich", sandwich, sandwich ? 1.0 : 0.0, 1.0);

  // the two decompositions of M; --perturb-q injects the simulated sequence bug
  double worst_mismatch = 0.0;
  bool mismatch_ok = true;
  std::string note;
  for (double r : {0.25, 0.5, 1.0}) {
    for (double eps : h.eps_grid({1e-4, 1e-5, 1e-6})) {
      const SpherePair pair(1.0, r, eps);
      auto sys1 = geometry::build_images_auto(pair, 1);
      const auto sys2 = geometry::build_images_auto(pair, 2);
      const auto q = constants::q_series(sys1, sys2, h.opt.tol);
      if (h.opt.perturb_q != 0.0) {
        for (double& c : sys1.charges) c *= 1.0 + h.opt.perturb_q;
      }
      try {
        const auto m = constants::m_series(pair, sys1, sys2, q.Q1, q.Q2, h.opt.tol);
        worst_mismatch = std::max(worst_mismatch, m.decomposition_mismatch);
      } catch (const decomposition_mismatch_error& e) {
        worst_mismatch = std::max(worst_mismatch, e.relative_mismatch);
        mismatch_ok = false;
        note = "decomposition mismatch detected";
      }
    }
  }
  h.flag("constants.m_decompositions", mismatch_ok && worst_mismatch <= 1e-9, worst_mismatch,
         1e-9, note);

  // m_series/m_asymptotic within the (r+1)/r window, deviation shrinking
  bool ratio_ok = true;
  double worst_dev = 0.0;
  for (double r : {0.25, 0.5, 1.0}) {
    std::vector<double> devs;
    for (double eps : h.eps_grid({1e-4, 1e-5, 1e-6})) {
      const SpherePair pair(1.0, r, eps);
      const double ratio =
          constants::m_series(pair, h.opt.tol).M / constants::m_asymptotic(pair);
      const double window = 5.0 / std::fabs(std::log(eps)) * (r + 1.0) / r;
      if (!(ratio >= 1.0 - window && ratio <= 1.0 + window)) ratio_ok = false;
      devs.push_back(std::fabs(ratio - 1.0));
    }
    if (devs.size() > 1 && !strictly_decreasing(devs)) ratio_ok = false;
    worst_dev = std::max(worst_dev, devs.back());
  }
  h.flag("constants.m_ratio_window", ratio_ok, worst_dev, 1.0, "|M_series/M_asym - 1| at finest eps");

  // M grows as the gap shrinks
  bool growing = true;
  for (double r : {0.5, 1.0}) {
    double prev = 0.0;
    for (double eps : h.eps_grid({1e-3, 1e-4, 1e-5})) {
      const double m = constants::m_series(SpherePair(1.0, r, eps), h.opt.tol).M;
      if (m <= prev) growing = false;
      prev = m;
    }
  }
  h.flag("constants.m_monotone", growing, growing ? 1.0 : 0.0, 1.0);
}

// ---- singular ----

void check_singular(Harness& h) {
  const SpherePair pair(1.0, 0.5, 1e-3);
  const auto sys1 = geometry::build_images_auto(pair, 1);
  const auto sys2 = geometry::build_images_auto(pair, 2);
  const auto konst = constants::compute(pair, sys1, sys2, h.opt.tol);

  // discrete Laplacian probe at random exterior points clear of the surfaces
  std::mt19937 rng(h.opt.seed + 1);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  const double step = 1e-4 * pair.r_max();
  double worst = 0.0;
  int accepted = 0;
  while (accepted < 50) {
    const Vec3 x{coord(rng), coord(rng), coord(rng)};
    const double d1 = norm(x - Vec3{pair.c1(), 0, 0}) - pair.r1;
    const double d2 = norm(x - Vec3{pair.c2(), 0, 0}) - pair.r2;
    if (d1 < 0.1 || d2 < 0.1) continue;
    ++accepted;
    double lap = -6.0 * singular::h_eval(pair, sys1, sys2, konst, x);
    for (int axis = 0; axis < 3; ++axis) {
      for (double sgn : {1.0, -1.0}) {
        Vec3 xx = x;
        (axis == 0 ? xx.x : axis == 1 ? xx.y : xx.z) += sgn * step;
        lap += singular::h_eval(pair, sys1, sys2, konst, xx);
      }
    }
    lap /= step * step;
    const double g = norm(singular::grad_h(pair, sys1, sys2, konst, x));
    worst = std::max(worst, std::fabs(lap) / (g / pair.r_max()));
  }
  h.bound("singular.harmonicity", worst, 1e-4);

  // h constant on each boundary within 1e-3 |h_gap|
  const double gap = singular::h_gap(pair, konst);
  double worst_var = 0.0;
  for (int ball = 1; ball <= 2; ++ball) {
    const double R = ball == 1 ? pair.r1 : pair.r2;
    const Vec3 c{ball == 1 ? pair.c1() : pair.c2(), 0, 0};
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 200; ++i) {
      const double t = 1.0 - 2.0 * (i + 0.5) / 200.0;
      const double st = std::sqrt(1.0 - t * t);
      const double phi = kPi * (1.0 + std::sqrt(5.0)) * (i + 0.5);
      const Vec3 x = c + R * Vec3{t, st * std::cos(phi), st * std::sin(phi)};
      const double v = singular::h_eval(pair, sys1, sys2, konst, x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    worst_var = std::max(worst_var, (hi - lo) / std::fabs(gap));
  }
  h.bound("singular.boundary_constancy", worst_var, 1e-3);

  // unit flux out of ball 1, into ball 2, zero in total
  double worst_flux = 0.0, worst_sum = 0.0;
  for (double r2 : {1.0, 0.5}) {
    const SpherePair p(1.0, r2, 1e-3);
    const auto s1 = geometry::build_images_auto(p, 1);
    const auto s2 = geometry::build_images_auto(p, 2);
    const auto k = constants::compute(p, s1, s2, h.opt.tol);
    const auto f1 = singular::flux(p, s1, s2, k, 1);
    const auto f2 = singular::flux(p, s1, s2, k, 2);
    worst_flux = std::max({worst_flux, std::fabs(f1.value - 1.0), std::fabs(f2.value + 1.0)});
    worst_sum = std::max(worst_sum, std::fabs(f1.value + f2.value));
  }
  h.bound("singular.flux_pair", std::max(worst_flux, worst_sum / 2.0), 1e-3);

  // closed-form gap vs direct pole-to-pole evaluation
  const double h1 = singular::h_eval(pair, sys1, sys2, konst, {pair.eps, 0, 0});
  const double h2 = singular::h_eval(pair, sys1, sys2, konst, {-pair.eps, 0, 0});
  h.bound("singular.hgap_consistency", std::fabs((h1 - h2) - gap) / std::fabs(gap), 1e-3);

  // deviation from the asymptotic gap gradient shrinks with eps
  bool trend_ok = true;
  double final_dev = 0.0;
  for (double r : {0.5, 1.0}) {
    std::vector<double> devs;
    for (double eps : h.eps_grid({1e-2, 1e-3, 1e-4, 1e-5})) {
      const SpherePair p(1.0, r, eps);
      const auto s1 = geometry::build_images_auto(p, 1);
      const auto s2 = geometry::build_images_auto(p, 2);
      const auto k = constants::compute(p, s1, s2, h.opt.tol);
      const double logd = std::fabs(std::log(p.gap_delta()));
      double dev = 0.0;
      for (double rr : {0.0, 0.5 * p.r_max() / (logd * logd)}) {
        const Vec3 x{0.0, rr, 0.0};
        const Vec3 g = singular::grad_h(p, s1, s2, k, x);
        const Vec3 ga = singular::grad_h_asymptotic(p, x);
        dev = std::max(dev, norm(g - ga) / norm(ga));
      }
      devs.push_back(dev);
    }
    if (!strictly_decreasing(devs)) trend_ok = false;
    final_dev = std::max(final_dev, devs.back());
  }
  h.flag("singular.gap_asymptotic_trend", trend_ok, final_dev, 1.0, "deviation at finest eps");
}

// ---- blowup ----

void check_blowup(Harness& h) {
  const auto linear = blowup::HarmonicBackground::parse("x1");
  const auto cubic = blowup::HarmonicBackground::parse("x1^3-3*x1*x2^2");

  double worst = 0.0;
  for (double r : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
    const SpherePair pair(1.0, r, 1e-6);
    const double lin = blowup::psi_factor(pair, linear, 1e-12).psi;
    const double cub = blowup::psi_factor(pair, cubic, 1e-12).psi;
    worst = std::max(worst, std::fabs(lin - blowup::psi_linear_closed(r, 1.0)) /
                                std::fabs(blowup::psi_linear_closed(r, 1.0)));
    worst = std::max(worst, std::fabs(cub - blowup::psi_cubic_closed(r)) /
                                std::fabs(blowup::psi_cubic_closed(r)));
  }
  h.bound("blowup.series_vs_closed", worst, 1e-8);

  // odd backgrounds: swapping radii and mirroring the background flips the sign
  worst = 0.0;
  for (const auto* hb : {&linear, &cubic}) {
    const SpherePair a(1.0, 0.5, 1e-4);
    const SpherePair b(0.5, 1.0, 1e-4);
    const double pa = blowup::psi_factor(a, *hb, 1e-12).psi;
    const double pb = blowup::psi_factor(b, hb->mirrored(), 1e-12).psi;
    worst = std::max(worst, std::fabs(pa + pb) / std::fabs(pa));
  }
  h.bound("blowup.mirror_antisymmetry", worst, 1e-13);

  // only the axial restriction of H matters
  const auto mixed = blowup::HarmonicBackground::parse("x1^3-3*x1*x2^2+2*x2-0.5*x3");
  const SpherePair pair(1.0, 0.75, 1e-4);
  const double full = blowup::psi_factor(pair, mixed, 1e-12).psi;
  const double axial = blowup::psi_factor(pair, mixed.axial_restriction(), 1e-12).psi;
  h.bound("blowup.axial_restriction", std::fabs(full - axial) / std::fabs(full), 1e-14);

  // gap_series |log eps| / (2 Psi) -> 1
  bool trend_ok = true;
  double final_dev = 0.0;
  for (double r2 : {1.0, 0.5}) {
    std::vector<double> devs;
    for (double eps : h.eps_grid({1e-3, 1e-4, 1e-5, 1e-6})) {
      const SpherePair p(1.0, r2, eps);
      const auto bundle = blowup::blowup_bundle(p, linear, h.opt.tol);
      devs.push_back(std::fabs(bundle.gap_series * std::fabs(std::log(eps)) /
                                   (2.0 * bundle.psi) -
                               1.0));
    }
    if (!strictly_decreasing(devs)) trend_ok = false;
    final_dev = std::max(final_dev, devs.back());
  }
  h.flag("blowup.gap_ratio_trend", trend_ok, final_dev, 1.0, "|ratio - 1| at finest eps");

  // Laplacian screening accepts harmonic backgrounds, rejects x1^2
  const bool lap_ok = blowup::laplacian_check(linear) && blowup::laplacian_check(cubic) &&
                      !blowup::laplacian_check(blowup::HarmonicBackground::parse("x1^2"));
  h.flag("blowup.laplacian_screening", lap_ok, lap_ok ? 1.0 : 0.0, 1.0);
}

// ---- fieldasym ----

void check_fieldasym(Harness& h) {
  const SpherePair pair(1.0, 0.5, 1e-3);
  const double psi_value = 2.0;  // arbitrary positive coefficient: identities are arithmetic
  const double peak = fieldasym::peak_axis_value(pair, psi_value);
  const Vec3 at0 = fieldasym::grad_u_main(pair, psi_value, {0, 0, 0});
  h.bound("fieldasym.peak_formula", std::fabs(at0.x - peak) / peak, 1e-15);

  double worst = 0.0;
  const double coef = 0.25 * (1.0 / pair.r1 + 1.0 / pair.r2);
  for (double r : {0.0, 1e-3, 5e-3, 1e-2}) {
    const Vec3 g = fieldasym::grad_u_main(pair, psi_value, {0, r, 0});
    const double profile = norm(g) * (pair.eps + coef * r * r);
    worst = std::max(worst, std::fabs(profile - psi_value / std::fabs(std::log(pair.eps))) /
                                (psi_value / std::fabs(std::log(pair.eps))));
  }
  h.bound("fieldasym.lorentzian_profile", worst, 1e-15);

  // singular reconstruction approaches the main term as eps -> 0
  const auto linear = blowup::HarmonicBackground::parse("x1");
  bool trend_ok = true;
  double final_dev = 0.0;
  for (double r2 : {1.0, 0.5}) {
    std::vector<double> devs;
    for (double eps : h.eps_grid({1e-2, 1e-3, 1e-4, 1e-5})) {
      const SpherePair p(1.0, r2, eps);
      const auto s1 = geometry::build_images_auto(p, 1);
      const auto s2 = geometry::build_images_auto(p, 2);
      const auto k = constants::compute(p, s1, s2, h.opt.tol);
      const Vec3 sing = fieldasym::grad_u_singular(p, linear, k, s1, s2, {0, 0, 0});
      const Vec3 main =
          fieldasym::grad_u_main(p, blowup::psi_factor(p, linear, 1e-12).psi, {0, 0, 0});
      devs.push_back(norm(sing - main) / norm(main));
    }
    if (!strictly_decreasing(devs)) trend_ok = false;
    final_dev = std::max(final_dev, devs.back());
  }
  h.flag("fieldasym.cross_validation_trend", trend_ok, final_dev, 1.0,
         "deviation at finest eps");
}

}  // namespace

std::vector<CheckResult> run_all(const Options& opt) {
  Harness h{opt, {}};
  check_specfun(h);
  check_geometry(h);
  check_constants(h);
  check_singular(h);
  check_blowup(h);
  check_fieldasym(h);
  return std::move(h.results);
}

}  // namespace gapfield::validate
