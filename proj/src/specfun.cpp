#include "gapfield/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gapfield::specfun {

namespace {

constexpr double kGamma = 0.5772156649015329;
constexpr double kShiftTo = 8.0;
constexpr double kUlp = 2.220446049250313e-16;

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

}  // namespace

double euler_gamma() { return kGamma; }

SpecialValue digamma_estimated(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  double acc_mag = 0.0;
  while (x < kShiftTo) {
    acc -= 1.0 / x;
    acc_mag += 1.0 / x;
    x += 1.0;
  }
  const double z = 1.0 / (x * x);
  // B2/2 x^-2 ... B14/14 x^-14
  const double ser =
      z * (1.0 / 12 -
           z * (1.0 / 120 -
                z * (1.0 / 252 - z * (1.0 / 240 - z * (1.0 / 132 - z * (691.0 / 32760 - z / 12))))));
  const double value = acc + std::log(x) - 0.5 / x - ser;
  // first omitted term B16/(16 x^16), plus recurrence and evaluation rounding
  const double tail = (3617.0 / 8160) * std::pow(z, 8);
  const double est = tail + kUlp * (2.0 * acc_mag + 2.0 * std::fabs(value) + 4.0);
  return {value, est};
}

double digamma(double x) { return digamma_estimated(x).value; }

double psi(double x) { return digamma(x) + kGamma; }

SpecialValue polygamma_estimated(int n, double x) {
  if (n != 1 && n != 3) {
    throw std::domain_error("polygamma: only orders 1 and 3 are supported, got " +
                            std::to_string(n));
  }
  require_positive(x, "polygamma");
  double acc = 0.0;
  while (x < kShiftTo) {
    acc += (n == 1) ? 1.0 / (x * x) : 6.0 / (x * x * x * x);
    x += 1.0;
  }
  const double z = 1.0 / (x * x);
  double value;
  if (n == 1) {
    // 1/x + 1/(2x^2) + sum B2n x^{-2n-1}
    const double ser =
        1.0 / 6 -
        z * (1.0 / 30 - z * (1.0 / 42 - z * (1.0 / 30 - z * (5.0 / 66 - z * (691.0 / 2730 - z * 7.0 / 6)))));
    value = acc + 1.0 / x + 0.5 * z + ser * z / x;
  } else {
    // 2/x^3 + 3/x^4 + sum B2n (2n+1)(2n+2) x^{-2n-3}
    const double ser =
        2.0 - z * (1.0 - z * (4.0 / 3 - z * (3.0 - z * (10.0 - z * (691.0 / 15 - z * 280.0)))));
    value = acc + (2.0 + 3.0 / x) * z / x + ser * z * z / x;
  }
  const double est = 8.0 * kUlp * (acc + std::fabs(value));
  return {value, est};
}

double polygamma(int n, double x) { return polygamma_estimated(n, x).value; }

}  // namespace gapfield::specfun
