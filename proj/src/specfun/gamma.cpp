#include <cmath>
#include <numbers>

#include "jscatter/errors.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

// Stirling series for ln Gamma, valid for Re z >= 15. Coefficients are
// B_{2k} / (2k (2k-1)).
cplx stirling_log_gamma(cplx z) {
  static constexpr double kCoeff[] = {
      1.0 / 12.0,         -1.0 / 360.0,         1.0 / 1260.0,       -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0,    1.0 / 156.0,        -3617.0 / 122400.0,
  };
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx power = inv;
  for (double c : kCoeff) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

cplx log_gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma_complex: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_complex(1.0 - z);
  }
  cplx shifted = z;
  cplx product = 1.0;
  while (shifted.real() < 15.0) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

cplx gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma_complex: pole at non-positive integer");
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return std::tgamma(z.real());
  const cplx lg = log_gamma_complex(z);
  if (lg.real() > 709.0) throw OverflowError("gamma_complex: |Gamma(z)| exceeds double range; use log_gamma_complex");
  return std::exp(lg);
}

cplx rgamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  const cplx lg = log_gamma_complex(z);
  if (lg.real() > 709.0) return 0.0;
  return std::exp(-lg);
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma_real: argument must be positive");
  return std::lgamma(x);
}

double rgamma_real(double x) {
  if (x <= 0.0 && std::floor(x) == x) return 0.0;
  if (x > 171.0) return 0.0;
  return 1.0 / std::tgamma(x);
}

}  // namespace jscatter::specfun
