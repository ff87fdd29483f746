#pragma once

// Special functions needed by the regularized J-matrix construction: gamma of
// complex argument, Bessel and Hankel functions of real and complex order at
// real positive argument, Gauss hypergeometric 2F1, Ferrers associated
// Legendre functions of complex order, and generalized Laguerre polynomials.
//
// Bessel/Hankel evaluation strategy (argument x > 0):
//   x <= kSeriesSwitchover : ascending power series accumulated in
//                            double-double arithmetic, so the e^x-sized
//                            cancellation of the alternating terms stays far
//                            below double precision; Y via the quotient
//                            Y_a = [cos(a pi) J_a - J_{-a}] / sin(a pi),
//                            regrouped inside H^{+-} to avoid cancellation.
//   x >  kSeriesSwitchover : Hankel asymptotic expansion. Real orders with
//                            |order| >= 2 are reached from the fractional
//                            order by upward recurrence in the order, which is
//                            stable for J and Y while order < x.

#include <complex>
#include <utility>
#include <vector>

namespace jscatter::specfun {

using cplx = std::complex<double>;

struct Tolerance {
  double abs = 0.0;
  double rel = 1e-13;
};

struct SeriesDiagnostics {
  int terms_used = 0;
  double last_term_magnitude = 0.0;
  bool converged = false;
};

template <class T>
struct Evaluated {
  T value{};
  SeriesDiagnostics diagnostics{};
};

inline constexpr double kSeriesSwitchover = 30.0;
inline constexpr double kMinImaginaryOrder = 1e-3;

// --- gamma family ---------------------------------------------------------

cplx gamma_complex(cplx z);
cplx log_gamma_complex(cplx z);
// 1/Gamma(z); entire, exactly zero at the poles of Gamma.
cplx rgamma_complex(cplx z);
double log_gamma_real(double x);
double rgamma_real(double x);

// --- Bessel / Hankel ------------------------------------------------------

// Ascending series for J_order(x) with its convergence record.
Evaluated<cplx> bessel_j_series(cplx order, double x, Tolerance tol = {});

// Hankel asymptotic expansion of H^{(1)} (sign = +1) or H^{(2)} (sign = -1).
Evaluated<cplx> hankel_asymptotic(int sign, cplx order, double x, Tolerance tol = {});

cplx bessel_j(cplx order, double x);
double bessel_j_real(double order, double x);
double bessel_y_real(double order, double x);

// H^{+}_a(x) = J_a + iY_a (sign = +1) and H^{-}_a(x) = J_a - iY_a (sign = -1).
cplx hankel(int sign, cplx order, double x);

// H^{±}_{i mu}(x); mu must be at least kMinImaginaryOrder.
cplx hankel_imag_order(int sign, double mu, double x);

// 2 d/dx[sqrt(x) F_a(x)] / sqrt(x) = lam+_a F_{a-1}(x) + lam-_a F_{a+1}(x),
// with lam±_a = 1/(2a) ± 1.
cplx bessel_lambda(int sign, cplx order);
// d/dx [sqrt(x) H^{sign}_a(x)] via the order-shift identity above.
cplx sqrt_x_hankel_derivative(int sign, cplx order, double x);
double sqrt_x_bessel_j_derivative(double order, double x);

// --- hypergeometric and Legendre -----------------------------------------

// 2F1(a, b; c; z) for 0 <= z < 1; z > 0.75 goes through the z -> 1 - z
// connection formula (requires c - a - b non-integer).
Evaluated<double> gauss_2f1(double a, double b, double c, double z, Tolerance tol = {});

// Plain Gauss series with complex parameters, 0 <= z < 1.
Evaluated<cplx> gauss_2f1_series(cplx a, cplx b, cplx c, double z, Tolerance tol = {});

// Ferrers function of the first kind on (0, 1):
//   P^m_v(x) = ((1+x)/(1-x))^{m/2} 2F1(-v, v+1; 1-m; (1-x)/2) / Gamma(1-m).
cplx assoc_legendre_complex_order(double degree, cplx order, double x);

// --- Laguerre -------------------------------------------------------------

double laguerre(int n, double alpha, double x);

// Value stored as mantissa * 2^exponent; used when L_n would leave the
// double range.
struct ScaledValue {
  double mantissa = 0.0;
  long exponent = 0;
  double value() const;
  double log_abs() const;
};
ScaledValue laguerre_scaled(int n, double alpha, double x);

// --- quadrature -----------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

// `panels` equal panels of `order`-point Gauss-Legendre on [lo, hi].
QuadratureRule composite_gauss_legendre(int panels, int order, double lo, double hi);

}  // namespace jscatter::specfun
