#include <cmath>
#include <numbers>

#include "jscatter/errors.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter::specfun {

double ScaledValue::value() const { return std::ldexp(mantissa, static_cast<int>(exponent)); }

double ScaledValue::log_abs() const {
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

ScaledValue laguerre_scaled(int n, double alpha, double x) {
  if (n < 0) throw DomainError("laguerre: degree must be non-negative");
  if (!(alpha > -1.0)) throw DomainError("laguerre: alpha must exceed -1");
  if (!(x >= 0.0)) throw DomainError("laguerre: x must be non-negative");
  double prev = 0.0;
  double cur = 1.0;
  long exponent = 0;
  for (int k = 0; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    const double mag = std::fabs(cur);
    if (mag > 0x1p500 || (mag < 0x1p-500 && mag != 0.0)) {
      int e = 0;
      std::frexp(cur, &e);
      cur = std::ldexp(cur, -e);
      prev = std::ldexp(prev, -e);
      exponent += e;
    }
  }
  int e = 0;
  const double m = std::frexp(cur, &e);
  return {m, exponent + e};
}

double laguerre(int n, double alpha, double x) {
  const ScaledValue s = laguerre_scaled(n, alpha, x);
  if (s.mantissa != 0.0 && std::fabs(s.log_abs()) > 700.0)
    throw OverflowError("laguerre: value leaves the double range; use laguerre_scaled");
  return s.value();
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw DomainError("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-16) break;
    }
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes[i] = mid - half * t;
    rule.nodes[n - 1 - i] = mid + half * t;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(int panels, int order, double lo, double hi) {
  if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * order);
  rule.weights.reserve(static_cast<size_t>(panels) * order);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(a + 0.5 * width * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

}  // namespace jscatter::specfun
