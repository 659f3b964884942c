#ifndef GAPFIELD_SPECFUN_HPP
#define GAPFIELD_SPECFUN_HPP

// Double-precision digamma psi0, shifted digamma psi = psi0 + gamma, and the
// polygamma derivatives psi', psi''' used by the blowup closed forms.
//
// Algorithm: upward recurrence to shift the argument to x >= 8, then the
// Bernoulli asymptotic expansion through B14. Accuracy on [1e-3, 1e3]:
// |err(psi0)| <= 1e-12 absolute, polygamma <= 1e-10 relative.

namespace gapfield::specfun {

// value plus a conservative bound on its absolute error
struct SpecialValue {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

// Euler-Mascheroni constant (nearest double)
double euler_gamma();

// psi0(x), x > 0; throws std::domain_error otherwise
double digamma(double x);

// psi(x) = psi0(x) + gamma; psi(1) = 0 up to rounding
double psi(double x);

// d^n/dx^n psi0(x) for n in {1, 3}; throws std::domain_error otherwise
double polygamma(int n, double x);

SpecialValue digamma_estimated(double x);
SpecialValue polygamma_estimated(int n, double x);

}  // namespace gapfield::specfun

#endif
