#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "jscatter/oracle.hpp"

namespace jscatter::oracle {

namespace {

// chi_n(r) evaluated directly: plain Laguerre recurrence in long double and
// the log-gamma normalisation.
double chi(int n, double mu, double lambda, double r) {
  const long double x = lambda * r;
  const long double alpha = 2.0L * mu;
  long double prev = 0.0L, cur = 1.0L;
  for (int k = 0; k < n; ++k) {
    const long double next = ((2.0L * k + 1.0L + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0L);
    prev = cur;
    cur = next;
  }
  const long double log_norm = 0.5L * (std::log(static_cast<long double>(lambda)) + std::lgamma(n + 1.0L) -
                                       std::lgamma(n + alpha + 1.0L));
  return static_cast<double>(std::exp(log_norm + (mu + 1.0L) * std::log(x) - 0.5L * x) * cur);
}

template <class F>
double kronrod(F&& f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13, &err);
}

}  // namespace

double adaptive_potential_element(const PotentialSpec& U, const DerivedParams& dp, const RegularizationParams& rp,
                                  int n, int m) {
  if (U.is_zero()) return 0.0;
  auto f = [&](double r) { return chi(n, dp.mu, dp.lambda, r) * chi(m, dp.mu, dp.lambda, r) * U(r); };
  return kronrod(f, rp.r0, std::numeric_limits<double>::infinity());
}

double adaptive_correction_element(double A, const DerivedParams& dp, const RegularizationParams& rp, int n, int m) {
  const double A0 = rp.A0;
  auto f = [&](double r) {
    return chi(n, dp.mu, dp.lambda, r) * chi(m, dp.mu, dp.lambda, r) * (A - A0) / (2.0 * r * r);
  };
  return kronrod(f, 0.0, rp.r0);
}

std::pair<double, double> dense_inverse_green(const Eigen::MatrixXd& block) {
  const Eigen::MatrixXd inv = block.fullPivLu().inverse();
  const int N = static_cast<int>(block.rows());
  return {inv(N - 1, N - 1), inv(N - 1, N - 2)};
}

}  // namespace jscatter::oracle
