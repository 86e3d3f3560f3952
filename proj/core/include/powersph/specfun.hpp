#pragma once

// Scalar special functions. Everything is evaluated in log space where a
// quantity can overflow; all functions are pure and thread-safe.

namespace powersph::specfun {

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// psi(x) = d/dx log Gamma(x) for x > 0.
double digamma(double x);

/// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
double log_beta(double a, double b);

/// Regularized incomplete Beta function I_x(a, b).
double reg_inc_beta(double x, double a, double b);

/// I_x(a, b) with the complement y = 1 - x supplied by the caller, so that
/// arguments very close to 1 keep full relative precision in y.
double reg_inc_beta(double x, double y, double a, double b);

/// Log of the Beta(a, b) density at x, with y = 1 - x supplied separately.
double log_beta_pdf(double x, double y, double a, double b);

/// Inverse of I_x(a, b) in x. Newton iteration with bisection safeguard;
/// throws NumericError if the iteration cap is reached.
double inv_reg_inc_beta(double y, double a, double b);

/// log I_v(z), modified Bessel function of the first kind.
///
/// Power series for z <= max(30, v); Debye uniform asymptotic expansion
/// (six terms) above that. The expansion is accurate to roughly 1e-9
/// relative just past the branch point and improves quickly with
/// sqrt(v^2 + z^2). Returns -inf for z = 0, v > 0.
double log_bessel_i(double v, double z);

/// Branch point used by log_bessel_i: the series is used for z <= this.
double log_bessel_i_branch(double v);

}  // namespace powersph::specfun
