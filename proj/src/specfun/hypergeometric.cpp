#include <cmath>

#include "jscatter/errors.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter::specfun {

namespace {

constexpr int kTermBudget = 20000;

bool near_integer(double v) { return std::fabs(v - std::round(v)) < 1e-12; }

Evaluated<double> direct_series(double a, double b, double c, double z, Tolerance tol) {
  double term = 1.0;
  double sum = 1.0;
  Evaluated<double> out;
  for (int k = 0; k < kTermBudget; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    const double mag = std::fabs(term);
    if (term == 0.0 || (k > 2 && mag <= tol.rel * 1e-2 * std::fabs(sum) + tol.abs)) {
      out.value = sum;
      out.diagnostics = {k + 1, mag, true};
      return out;
    }
  }
  throw ConvergenceError("gauss_2f1: series did not converge within the term budget");
}

}  // namespace

Evaluated<double> gauss_2f1(double a, double b, double c, double z, Tolerance tol) {
  if (c <= 0.0 && near_integer(c)) throw PoleError("gauss_2f1: c is a non-positive integer");
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("gauss_2f1: z must lie in [0, 1)");
  const double s = c - a - b;
  if (z <= 0.75 || near_integer(s)) return direct_series(a, b, c, z, tol);

  // z -> 1 - z connection formula.
  const double w = 1.0 - z;
  const auto f1 = direct_series(a, b, 1.0 - s, w, tol);
  const auto f2 = direct_series(c - a, c - b, s + 1.0, w, tol);
  const double g1 = std::tgamma(c) * std::tgamma(s) * rgamma_real(c - a) * rgamma_real(c - b);
  const double g2 = std::tgamma(c) * std::tgamma(-s) * rgamma_real(a) * rgamma_real(b);
  Evaluated<double> out;
  out.value = g1 * f1.value + std::pow(w, s) * g2 * f2.value;
  out.diagnostics = {f1.diagnostics.terms_used + f2.diagnostics.terms_used,
                     std::max(f1.diagnostics.last_term_magnitude, f2.diagnostics.last_term_magnitude), true};
  return out;
}

Evaluated<cplx> gauss_2f1_series(cplx a, cplx b, cplx c, double z, Tolerance tol) {
  if (c.imag() == 0.0 && c.real() <= 0.0 && near_integer(c.real()))
    throw PoleError("gauss_2f1_series: c is a non-positive integer");
  if (!(z >= 0.0 && z < 1.0)) throw DomainError("gauss_2f1_series: z must lie in [0, 1)");
  cplx term = 1.0;
  cplx sum = 1.0;
  Evaluated<cplx> out;
  for (int k = 0; k < kTermBudget; ++k) {
    term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * (k + 1.0)) * z;
    sum += term;
    const double mag = std::abs(term);
    if (mag == 0.0 || (k > 2 && mag <= tol.rel * 1e-2 * std::abs(sum) + tol.abs)) {
      out.value = sum;
      out.diagnostics = {k + 1, mag, true};
      return out;
    }
  }
  throw ConvergenceError("gauss_2f1_series: series did not converge within the term budget");
}

cplx assoc_legendre_complex_order(double degree, cplx order, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("assoc_legendre_complex_order: x must lie in (0, 1)");
  const cplx c = 1.0 - order;
  if (c.imag() == 0.0 && c.real() <= 0.0 && near_integer(c.real()))
    throw PoleError("assoc_legendre_complex_order: 1 - order is a non-positive integer");
  const auto f = gauss_2f1_series(-degree, degree + 1.0, c, 0.5 * (1.0 - x));
  const cplx branch = std::exp(0.5 * order * std::log((1.0 + x) / (1.0 - x)));
  return branch * f.value * rgamma_complex(c);
}

}  // namespace jscatter::specfun
