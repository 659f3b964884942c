#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "gapfield/geometry.hpp"

using namespace gapfield;
using geometry::SpherePair;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("pair validation") {
  CHECK_THROWS_AS(SpherePair(1.0, 1.0, 0.2), std::domain_error);  // gap too wide
  CHECK_THROWS_AS(SpherePair(-1.0, 1.0, 1e-3), std::domain_error);
  CHECK_THROWS_AS(SpherePair(1.0, 1.0, 0.0), std::domain_error);
  const SpherePair p(2.0, 0.5, 1e-3);
  CHECK(p.r_max() == 2.0);
  CHECK(p.radius_ratio() == doctest::Approx(0.25));
  CHECK(p.gap_delta() == doctest::Approx(5e-4));
  CHECK(p.c1() - p.c2() == doctest::Approx(2.0 + 0.5 + 2e-3));
}

TEST_CASE("reflect: boundary fixed point, hand value, defining identity") {
  const Vec3 c{1.005, 0.0, 0.0};
  const Vec3 boundary{2.005, 0.0, 0.0};
  const Vec3 fixed = geometry::reflect(c, 1.0, boundary);
  CHECK(norm(fixed - boundary) < 1e-15);

  // r1 = r2 = 1, eps = 0.005: image of the far center, 1.005 - 2.01/2.01^2
  const Vec3 image = geometry::reflect(c, 1.0, {-1.005, 0.0, 0.0});
  CHECK(image.x == doctest::Approx(0.5074875621890547).epsilon(1e-15));
  CHECK(image.y == 0.0);

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 center{u(rng), u(rng), u(rng)};
    Vec3 x{u(rng), u(rng), u(rng)};
    if (norm(x - center) < 1e-6) continue;
    const double radius = 0.5 + std::fabs(u(rng));
    const Vec3 xr = geometry::reflect(center, radius, x);
    CHECK(norm(geometry::reflect(center, radius, xr) - x) <= 1e-11 * (1.0 + norm(x)));
    CHECK(norm(xr - center) * norm(x - center) ==
          doctest::Approx(radius * radius).epsilon(1e-12));
  }
  CHECK_THROWS_AS(geometry::reflect(c, 1.0, c), std::domain_error);
}

TEST_CASE("fixed points: equal-sphere radical oracle and mirror symmetry") {
  const SpherePair p(1.0, 1.0, 0.005);
  const auto fp = geometry::fixed_points(p);
  CHECK(std::fabs(fp.p1 - std::sqrt(2.0 * 0.005 + 0.005 * 0.005)) < 1e-12);
  CHECK(fp.p1 == doctest::Approx(0.10012492197250393).epsilon(1e-10));
  CHECK(std::fabs(fp.p1 + fp.p2) < 1e-12);

  // residual contract
  const double back = geometry::reflect_axial(
      p.c1(), p.r1, geometry::reflect_axial(p.c2(), p.r2, fp.p1));
  CHECK(std::fabs(back - fp.p1) <= 1e-14 * p.r_max());
}

TEST_CASE("fixed points: leading asymptotic 2 sqrt(r delta/(r+1))") {
  const SpherePair p(1.0, 0.5, 1e-4);
  const auto fp = geometry::fixed_points(p);
  const double lead = 2.0 * std::sqrt(0.5 * 1e-4 / 1.5);
  CHECK(lead == doctest::Approx(0.011547).epsilon(1e-4));
  CHECK(std::fabs(fp.p1 / p.r1 - lead) <= 10.0 * p.gap_delta());
  CHECK(fp.p1 > 0.0);
  CHECK(fp.p1 < p.c1());
  CHECK(fp.p2 < 0.0);
}

TEST_CASE("build_images: seeds, mirror symmetry at equal radii") {
  const SpherePair p(1.0, 1.0, 1e-3);
  const auto s1 = geometry::build_images(p, 1, 32);
  const auto s2 = geometry::build_images(p, 2, 32);
  CHECK(s1.charges[0] == 1.0);
  CHECK(s2.charges[0] == 1.0);
  CHECK(s1.points[0] == p.c1());
  for (std::int64_t j = 0; j <= s1.truncation_K; ++j) {
    CHECK(s1.charges[j] == doctest::Approx(s2.charges[j]).epsilon(1e-14));
    CHECK(s1.points[j] == doctest::Approx(-s2.points[j]).epsilon(1e-12));
  }
}

TEST_CASE("build_images: containment and monotone charges") {
  const SpherePair p(1.0, 0.4, 2e-3);
  const auto sys = geometry::build_images(p, 1, 64);
  for (std::int64_t j = 0; j <= sys.truncation_K; ++j) {
    if (j % 2 == 0) {
      CHECK(std::fabs(sys.points[j] - p.c1()) < p.r1);  // inside ball 1
    } else {
      CHECK(std::fabs(sys.points[j] - p.c2()) < p.r2);  // inside ball 2
    }
    if (j > 0) {
      CHECK(sys.charges[j] > 0.0);
      CHECK(sys.charges[j] <= sys.charges[j - 1]);
    }
  }
  CHECK_THROWS_AS(geometry::build_images(p, 3, 8), std::domain_error);
  CHECK_THROWS_AS(geometry::build_images(p, 1, 0), std::domain_error);
  CHECK_THROWS_AS(geometry::build_images(p, 1, 20'000'000), std::domain_error);
}

TEST_CASE("auto truncation honors the tail target") {
  const SpherePair p(1.0, 0.5, 1e-4);
  const auto sys = geometry::build_images_auto(p, 1, 1e-12);
  CHECK(sys.tail_bound <= 1e-12);
  double rest = 0.0;
  const auto big = geometry::build_images(p, 1, 4 * sys.pair_count());
  for (std::int64_t j = sys.truncation_K + 1; j <= big.truncation_K; ++j) {
    rest += big.charges[j];
  }
  CHECK(rest <= sys.tail_bound * 1.01);
}

TEST_CASE("monotone interleaving against the fixed points") {
  // Charge pairs decay like sqrt(m) per pair while point offsets decay like m
  // (m = Mobius multiplier), so any small charge-tail truncation runs the point
  // recursion into its float stall, where consecutive points tie exactly on the
  // fixed point. Strictness is asserted wherever offsets stay above a
  // 1e-12 * r_max floor; weak monotonicity must hold everywhere.
  for (double r : {0.3, 1.0}) {
    const SpherePair p(1.0, r, 1e-4);
    const auto fp = geometry::fixed_points(p);
    const auto sys = geometry::build_images_auto(p, 1);
    const double floor_ = 1e-12 * p.r_max();
    bool strict = true, weak = true, interleaved = true;
    for (std::int64_t k = 1; k < sys.pair_count(); ++k) {
      const double even = sys.points[2 * k], odd = sys.points[2 * k + 1];
      weak = weak && even <= sys.points[2 * k - 2] && odd >= sys.points[2 * k - 1];
      interleaved = interleaved && fp.p2 < 0.0 && 0.0 < fp.p1 && odd < 0.0 && even > 0.0 &&
                    even >= fp.p1 && odd <= fp.p2;
      if (even - fp.p1 > floor_ && fp.p2 - odd > floor_) {
        // resolvable regime: strictly decreasing / increasing, fixed points strictly between
        strict = strict && even < sys.points[2 * k - 2] && odd > sys.points[2 * k - 1] &&
                 odd < fp.p2 && fp.p1 < even;
      }
    }
    CHECK(strict);
    CHECK(weak);
    CHECK(interleaved);
  }
}

TEST_CASE("image points track Theta within C sqrt(r delta/(r+1)), C <= 10") {
  // spec example: r1 = 1, r2 = 0.5, delta = 1e-5
  const SpherePair p(1.0, 0.5, 1e-5);
  const double r = 0.5;
  const std::int64_t N = geometry::n_dominant(p);
  const auto sys = geometry::build_images(p, 1, N + 2);
  const double scale = std::sqrt(r * p.gap_delta() / (r + 1.0));
  double fitted = 0.0;
  for (std::int64_t k = 0; k <= N; ++k) {
    fitted = std::max(fitted, std::fabs(sys.points[2 * k] - geometry::theta_even(1, k, r)) / scale);
    // odd points approach -Theta_{1,2k+1}
    fitted = std::max(fitted,
                      std::fabs(sys.points[2 * k + 1] + geometry::theta_odd(1, k, r)) / scale);
    // charges track the same main terms
    CHECK(std::fabs(sys.charges[2 * k] - geometry::theta_even(1, k, r)) <=
          10.0 * std::sqrt((r + 1.0) * p.gap_delta() / r));
  }
  CHECK(fitted <= 10.0);
}

TEST_CASE("Theta tracking scale stays bounded as delta shrinks") {
  for (double r : {0.25, 0.5, 1.0}) {
    double first = 0.0, last = 0.0;
    for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const SpherePair p(1.0, r, delta);
      const std::int64_t N = geometry::n_dominant(p);
      const auto sys = geometry::build_images(p, 1, std::max<std::int64_t>(N + 2, 8));
      const double scale = std::sqrt(r * delta / (r + 1.0));
      double mx = 0.0;
      for (std::int64_t k = 0; k <= N; ++k) {
        mx = std::max(mx, std::fabs(sys.points[2 * k] - geometry::theta_even(1, k, r)) / scale);
      }
      if (delta == 1e-3) first = mx;
      last = mx;
    }
    CHECK(last <= 2.0 * first + 1.0);
  }
}

TEST_CASE("Mobius multiplier form matches the recursion where resolvable") {
  const SpherePair p(1.0, 0.5, 1e-5);
  const auto mf = geometry::mobius_form(p);
  CHECK(mf.multiplier > 0.0);
  CHECK(mf.multiplier < 1.0);
  const auto fp = geometry::fixed_points(p);
  const auto sys = geometry::build_images(p, 1, 600);
  for (std::int64_t k = 1; k <= 500; k += 7) {
    const double recursion = sys.points[2 * k] - fp.p1;
    if (recursion < 1e-8) break;  // below this the recursion difference is noise-dominated
    CHECK(geometry::even_offset(mf, k) == doctest::Approx(recursion).epsilon(1e-5));
  }
}

TEST_CASE("offset lower-bound shape and terminal decay on the multiplier form") {
  for (double r : {0.25, 0.5, 1.0}) {
    double first_slack = 0.0, last_slack = 0.0;
    for (double delta : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const SpherePair p(1.0, r, delta);
      const auto mf = geometry::mobius_form(p);
      const std::int64_t n1 = geometry::n_one(p);
      const double a_hat = 1.0 + 4.0 * std::sqrt((r + 1.0) * delta / r);
      double slack = 1.0;
      for (std::int64_t k = 1; k <= n1; k = k < 64 ? k + 1 : k + k / 8) {
        const double log_rhs =
            std::log(2.0 * std::sqrt(r * delta / (r + 1.0))) - k * std::log(a_hat);
        slack = std::max(slack, std::exp(log_rhs - geometry::log_even_offset(mf, k)));
      }
      if (delta == 1e-3) first_slack = slack;
      last_slack = slack;
      // (iv): terminal decay at N1(delta), compared in log space
      const double bound = -std::sqrt((r + 1.0) / r) / (std::sqrt(delta) * std::fabs(std::log(delta)));
      CHECK(geometry::log_even_offset(mf, n1) <= bound);
    }
    CHECK(first_slack >= 1.0);
    CHECK(last_slack <= first_slack * 1.25);  // the fitted slack does not grow as delta -> 0
  }
}

TEST_CASE("diagnostics: markers, Theta table, slack recording") {
  const SpherePair p(1.0, 1.0, 1e-4);
  CHECK(geometry::n_zero(p) == 9);
  CHECK(geometry::n_one(p) == 1085);
  // Theta_{1,1}(r=1) = r/((0+1)(r+1)) = 0.5
  CHECK(geometry::theta_odd(1, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto sys = geometry::build_images(p, 1, geometry::n_one(p) + 2);
  const auto d = geometry::diagnostics(p, sys);
  CHECK(d.N0_delta == 9);
  CHECK(d.N1_delta == 1085);
  CHECK(d.N_delta == geometry::n_dominant(p));
  CHECK(d.theta.size() >= 2);
  CHECK(d.theta[1] == doctest::Approx(0.5));
  CHECK(d.lower_shape_slack >= 1.0);
  CHECK(d.multiplier > 0.0);
  CHECK(d.multiplier < 1.0);
  CHECK(d.A1 == doctest::Approx(1.0 + 4.0 * std::sqrt(2e-4)));
  CHECK(d.B1 == -d.B2);

  const auto small = geometry::build_images(p, 1, 8);
  CHECK_THROWS_AS(geometry::diagnostics(p, small), std::invalid_argument);
}

TEST_CASE("N ordering holds once delta is small") {
  for (double r : {0.25, 0.5, 1.0}) {
    for (double delta : {1e-5, 1e-6}) {
      const SpherePair p(1.0, r, delta);
      CHECK(geometry::n_zero(p) < geometry::n_dominant(p));
      CHECK(geometry::n_dominant(p) < geometry::n_one(p));
    }
  }
}

TEST_SUITE_END();
