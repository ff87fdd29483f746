#include <cmath>

#include "jscatter/coefficients.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter {

BasisSet make_basis(const DerivedParams& dp, const RegularizationParams& rp, int N) {
  if (N < 4) throw DomainError("basis size N must be at least 4");
  return {N, dp.nu, dp.zeta, dp.lambda, rp.r0};
}

double basis_eval(BasisKind which, int n, double r, const BasisSet& bs) {
  if (n < 0) throw DomainError("basis_eval: negative index");
  if (!(r > 0.0)) throw DomainError("basis_eval: r must be positive");
  const double alpha = bs.alpha(which);
  const double x = bs.lambda * r;
  const auto L = specfun::laguerre_scaled(n, alpha, x);
  if (L.mantissa == 0.0) return 0.0;
  const double log_norm = 0.5 * (std::log(bs.lambda) + std::lgamma(n + 1.0) - std::lgamma(n + alpha + 1.0));
  const double log_mag = log_norm + bs.power(which) * std::log(x) - 0.5 * x + L.log_abs();
  if (log_mag > 709.0) throw OverflowError("basis_eval: value exceeds the double range");
  return std::copysign(std::exp(log_mag), L.mantissa);
}

// The recurrence for the normalised polynomials
//   Lt_n = L_n sqrt(n! / Gamma(n+alpha+1)),
//   sqrt((n+1)(n+1+alpha)) Lt_{n+1} = (2n+1+alpha-x) Lt_n - sqrt(n(n+alpha)) Lt_{n-1},
// with the weight x^p e^{-x/2} folded into the starting value keeps every
// intermediate near the size of the basis functions themselves.
namespace {

template <class Visit>
void walk_basis(BasisKind which, int count, double r, const BasisSet& bs, Visit&& visit) {
  const double alpha = bs.alpha(which);
  const double x = bs.lambda * r;
  double prev = 0.0;
  double cur = std::exp(0.5 * std::log(bs.lambda) - 0.5 * std::lgamma(alpha + 1.0) + bs.power(which) * std::log(x) -
                        0.5 * x);
  for (int n = 0; n < count; ++n) {
    visit(n, cur);
    const double next = ((2.0 * n + 1.0 + alpha - x) * cur - std::sqrt(n * (n + alpha)) * prev) /
                        std::sqrt((n + 1.0) * (n + 1.0 + alpha));
    prev = cur;
    cur = next;
  }
}

}  // namespace

void basis_values(BasisKind which, int count, double r, const BasisSet& bs, double* out) {
  if (!(r > 0.0)) throw DomainError("basis_values: r must be positive");
  walk_basis(which, count, r, bs, [out](int n, double v) { out[n] = v; });
}

double basis_sum(BasisKind which, const std::vector<double>& coeff, double r, const BasisSet& bs) {
  if (!(r > 0.0)) throw DomainError("basis_sum: r must be positive");
  double acc = 0.0;
  walk_basis(which, static_cast<int>(coeff.size()), r, bs, [&](int n, double v) { acc += coeff[n] * v; });
  if (!std::isfinite(acc)) throw OverflowError("basis_sum: non-finite partial sum");
  return acc;
}

}  // namespace jscatter
