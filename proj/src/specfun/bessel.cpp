#include <cmath>
#include <numbers>

#include "double_double.hpp"
#include "jscatter/errors.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter::specfun {

namespace {

using detail::DD;
using detail::DDComplex;

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesBudget = 600;
constexpr int kAsymptoticBudget = 200;

bool is_integer(double v) { return std::floor(v) == v; }

bool is_negative_integer(cplx a) { return a.imag() == 0.0 && a.real() < 0.0 && is_integer(a.real()); }

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(who) + ": argument must be positive and finite");
}

// J and Y of real order q >= 0 at large x: asymptotic values at the
// fractional order and q-floor(q)+1, then upward recurrence in the order.
struct JY {
  double j;
  double y;
};

JY jy_large_x(double q, double x) {
  const double frac = q - std::floor(q);
  const int steps = static_cast<int>(std::floor(q));
  const cplx h0 = hankel_asymptotic(+1, frac, x).value;
  if (steps == 0) return {h0.real(), h0.imag()};
  const cplx h1 = hankel_asymptotic(+1, frac + 1.0, x).value;
  double jm = h0.real(), ym = h0.imag();
  double jc = h1.real(), yc = h1.imag();
  for (int s = 1; s < steps; ++s) {
    const double v = frac + s;
    const double jn = 2.0 * v / x * jc - jm;
    const double yn = 2.0 * v / x * yc - ym;
    jm = jc;
    ym = yc;
    jc = jn;
    yc = yn;
  }
  return {jc, yc};
}

// Upward recurrence is only trustworthy for J while the order stays below x.
bool large_x_regime(double absorder, double x) { return x > kSeriesSwitchover && absorder < x - 5.0; }

}  // namespace

Evaluated<cplx> bessel_j_series(cplx order, double x, Tolerance tol) {
  require_positive(x, "bessel_j_series");
  if (is_negative_integer(order)) {
    // J_{-n} = (-1)^n J_n
    const int n = static_cast<int>(-order.real());
    auto r = bessel_j_series(cplx(n, 0.0), x, tol);
    if (n % 2 != 0) r.value = -r.value;
    return r;
  }
  const double half = 0.5 * x;
  const DD q = -detail::two_prod(half, half);
  const DDComplex a(order);

  DDComplex term(DD(1.0), DD(0.0));
  DDComplex sum = term;
  double peak = 1.0;
  Evaluated<cplx> out;
  int k = 1;
  for (; k <= kSeriesBudget; ++k) {
    const DDComplex denom(DD(static_cast<double>(k)) * (DD(static_cast<double>(k)) + a.re),
                          DD(static_cast<double>(k)) * a.im);
    term = DDComplex(term.re * q, term.im * q) / denom;
    sum = sum + term;
    const double tmag = detail::abs(term);
    peak = std::max(peak, tmag);
    const double smag = detail::abs(sum);
    if (k > half && tmag <= tol.rel * 1e-3 * smag + tol.abs) {
      out.diagnostics = {k, tmag / std::max(smag, 1e-300), true};
      break;
    }
  }
  if (k > kSeriesBudget) throw ConvergenceError("bessel_j_series: term budget exhausted");
  // Leading factor (x/2)^a / Gamma(a+1).
  const cplx prefactor = std::exp(order * std::log(half)) * rgamma_complex(order + 1.0);
  out.value = prefactor * sum.to_complex();
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw OverflowError("bessel_j_series: non-finite result");
  return out;
}

Evaluated<cplx> hankel_asymptotic(int sign, cplx order, double x, Tolerance tol) {
  require_positive(x, "hankel_asymptotic");
  const cplx four_a2 = 4.0 * order * order;
  const cplx unit_step = sign > 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
  cplx term = 1.0;
  cplx sum = 1.0;
  double previous = 1.0;
  Evaluated<cplx> out;
  int k = 1;
  for (; k <= kAsymptoticBudget; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= unit_step * (four_a2 - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag > previous) {
      // Divergent tail reached: stop at the smallest term.
      out.diagnostics = {k - 1, previous, previous <= tol.rel};
      break;
    }
    sum += term;
    previous = mag;
    if (mag <= tol.rel * 1e-3 * std::abs(sum) + tol.abs) {
      out.diagnostics = {k, mag, true};
      break;
    }
  }
  if (!out.diagnostics.converged)
    throw ConvergenceError("hankel_asymptotic: expansion did not reach the requested tolerance (x too small)");
  const cplx omega = x - order * (kPi / 2.0) - kPi / 4.0;
  out.value = std::sqrt(2.0 / (kPi * x)) * std::exp(unit_step * omega) * sum;
  return out;
}

cplx bessel_j(cplx order, double x) {
  require_positive(x, "bessel_j");
  if (order.imag() == 0.0) return bessel_j_real(order.real(), x);
  if (x <= kSeriesSwitchover) return bessel_j_series(order, x).value;
  return 0.5 * (hankel_asymptotic(+1, order, x).value + hankel_asymptotic(-1, order, x).value);
}

double bessel_j_real(double order, double x) {
  require_positive(x, "bessel_j_real");
  if (!large_x_regime(std::fabs(order), x)) return bessel_j_series(order, x).value.real();
  if (order >= 0.0) return jy_large_x(order, x).j;
  const double q = -order;
  const JY v = jy_large_x(q, x);
  return std::cos(q * kPi) * v.j - std::sin(q * kPi) * v.y;
}

double bessel_y_real(double order, double x) {
  require_positive(x, "bessel_y_real");
  if (large_x_regime(std::fabs(order), x)) {
    if (order >= 0.0) return jy_large_x(order, x).y;
    // Y_{-q} = sin(q pi) J_q + cos(q pi) Y_q
    const double q = -order;
    const JY v = jy_large_x(q, x);
    return std::sin(q * kPi) * v.j + std::cos(q * kPi) * v.y;
  }
  if (is_integer(order)) throw DomainError("bessel_y_real: integer order is not supported on the series path");
  const double jp = bessel_j_series(order, x).value.real();
  const double jm = bessel_j_series(-order, x).value.real();
  return (std::cos(order * kPi) * jp - jm) / std::sin(order * kPi);
}

cplx hankel(int sign, cplx order, double x) {
  require_positive(x, "hankel");
  const double s = sign > 0 ? 1.0 : -1.0;
  if (order.imag() == 0.0) {
    const double a = order.real();
    return {bessel_j_real(a, x), s * bessel_y_real(a, x)};
  }
  if (x > kSeriesSwitchover) return hankel_asymptotic(sign, order, x).value;
  const cplx jp = bessel_j_series(order, x).value;
  const cplx jm = bessel_j_series(-order, x).value;
  // J + s i (cos(a pi) J - J_{-a}) / sin(a pi), regrouped as
  // s i (J e^{-s i a pi} - J_{-a}) / sin(a pi). For a = i mu the plain form
  // cancels cosh(mu pi) J against J_{-a}; this one does not, and it keeps
  // conj(e^{-pi mu/2} H+) = e^{pi mu/2} H- exact when J_{-a} = conj(J_a).
  const cplx si(0.0, s);
  return si * (jp * std::exp(-si * order * kPi) - jm) / std::sin(order * kPi);
}

cplx hankel_imag_order(int sign, double mu, double x) {
  if (!(mu >= kMinImaginaryOrder))
    throw CancellationError("hankel_imag_order: mu below 1e-3, sinh(mu pi) quotient loses all accuracy");
  return hankel(sign, cplx(0.0, mu), x);
}

cplx bessel_lambda(int sign, cplx order) {
  if (order == cplx(0.0, 0.0)) throw DomainError("bessel_lambda: order must be non-zero");
  return 1.0 / (2.0 * order) + (sign > 0 ? 1.0 : -1.0);
}

cplx sqrt_x_hankel_derivative(int sign, cplx order, double x) {
  const cplx lo = hankel(sign, order - 1.0, x);
  const cplx hi = hankel(sign, order + 1.0, x);
  return 0.5 * std::sqrt(x) * (bessel_lambda(+1, order) * lo + bessel_lambda(-1, order) * hi);
}

double sqrt_x_bessel_j_derivative(double order, double x) {
  const double lo = bessel_j_real(order - 1.0, x);
  const double hi = bessel_j_real(order + 1.0, x);
  return 0.5 * std::sqrt(x) * ((0.5 / order + 1.0) * lo + (0.5 / order - 1.0) * hi);
}

}  // namespace jscatter::specfun
