#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jscatter/coefficients.hpp"
#include "jscatter/specfun.hpp"

namespace jscatter {

namespace sf = specfun;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double max_abs_term(std::initializer_list<double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, std::fabs(t));
  return m;
}

// Forward five-term recursion
//   P_{n+2} = -(a_n P_n + b_{n-1} P_{n-1} + b_n P_{n+1} + c_{n-2} P_{n-2}) / c_n
// started from P_0..P_3, in the arithmetic of the complex type C.
template <class C, class R>
std::vector<cplx> recur_five(const FiveTermCoeffs& k, const std::array<cplx, 4>& init, int count) {
  std::vector<C> P(count);
  for (int i = 0; i < 4 && i < count; ++i) P[i] = C(R(init[i].real()), R(init[i].imag()));
  for (int n = 2; n + 2 < count; ++n) {
    const C num = R(k.a[n]) * P[n] + R(k.b[n - 1]) * P[n - 1] + R(k.b[n]) * P[n + 1] + R(k.c[n - 2]) * P[n - 2];
    P[n + 2] = -num / R(k.c[n]);
  }
  std::vector<cplx> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = cplx(static_cast<double>(real(P[i])), static_cast<double>(imag(P[i])));
  }
  return out;
}

std::vector<cplx> run_recursion(const FiveTermCoeffs& k, const std::array<cplx, 4>& init, int count, bool extended) {
  if (extended) {
    using boost::multiprecision::cpp_bin_float_50;
    using boost::multiprecision::cpp_complex_50;
    return recur_five<cpp_complex_50, cpp_bin_float_50>(k, init, count);
  }
  return recur_five<cplx, double>(k, init, count);
}

}  // namespace

// --- inner ----------------------------------------------------------------

ThreeTermCoeffs three_term_coeffs(const DerivedParams& dp, int N) {
  ThreeTermCoeffs t;
  t.alpha.resize(N + 1);
  t.beta.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    t.alpha[n] = (2.0 * n + 2.0 * dp.nu + 1.0) * dp.cos_theta;
    t.beta[n] = -std::sqrt((n + 1.0) * (n + 2.0 * dp.nu + 1.0));
  }
  return t;
}

double tau_of(const DerivedParams& dp) {
  const double c = dp.cos_theta;
  if (c == 0.0) return 0.0;
  return c * sf::gauss_2f1(0.5, dp.nu + 1.0, 1.5, c * c).value;
}

double cosine_eta_slope(const DerivedParams& dp) {
  const double nu = dp.nu;
  return -(2.0 / std::sqrt(kPi)) * std::tgamma(nu + 1.0) * std::pow(2.0, nu) * std::pow(dp.sin_theta, 0.5 - nu) /
         (std::sqrt(kPi * dp.lambda) * std::tgamma(2.0 * nu + 2.0));
}

std::array<double, 2> inner_initials(SeriesKind kind, const DerivedParams& dp, double eta) {
  const double nu = dp.nu;
  const double pref = std::pow(2.0 * dp.sin_theta, nu + 0.5) / std::sqrt(2.0 * kPi * dp.lambda);
  const double S0 = std::tgamma(nu + 0.5) / std::sqrt(std::tgamma(2.0 * nu + 1.0)) * pref;
  const double S1 = 2.0 * std::tgamma(nu + 1.5) * dp.cos_theta / std::sqrt(std::tgamma(2.0 * nu + 2.0)) * pref;
  if (kind == SeriesKind::sine) return {S0, S1};
  const double tau = tau_of(dp);
  const double g = std::tgamma(nu + 1.0);
  const double C0 = 2.0 * g / (std::sqrt(kPi) * std::tgamma(nu + 0.5)) * tau * S0;
  const double C1 = (2.0 / std::sqrt(kPi)) * g * tau * S1 / std::tgamma(nu + 0.5) + eta * cosine_eta_slope(dp);
  return {C0, C1};
}

InnerCoefficients run_three_term(SeriesKind kind, const DerivedParams& dp, double eta, int N, double amplitude) {
  if (N < 2) throw DomainError("run_three_term: N must be at least 2");
  InnerCoefficients out;
  out.kind = kind;
  out.eta = eta;
  out.tau = tau_of(dp);
  out.amplitude = amplitude;
  auto t = three_term_coeffs(dp, N);
  out.alpha = std::move(t.alpha);
  out.beta = std::move(t.beta);
  const auto init = inner_initials(kind, dp, eta);
  out.P.assign(N, 0.0);
  out.P[0] = amplitude * init[0];
  out.P[1] = amplitude * init[1];
  for (int n = 1; n + 1 < N; ++n) {
    out.P[n + 1] = -(out.alpha[n] * out.P[n] + out.beta[n - 1] * out.P[n - 1]) / out.beta[n];
    if (!std::isfinite(out.P[n + 1])) {
      std::ostringstream msg;
      msg << "run_three_term: coefficient overflow at n = " << n + 1 << " (lower N)";
      throw ConvergenceError(msg.str());
    }
  }
  out.max_residual = three_term_residual(out);
  return out;
}

double three_term_residual(const InnerCoefficients& c) {
  const auto& P = c.P;
  const int N = static_cast<int>(P.size());
  double worst = 0.0;
  for (int n = 1; n + 1 < N; ++n) {
    const double t0 = c.alpha[n] * P[n];
    const double t1 = c.beta[n - 1] * P[n - 1];
    const double t2 = c.beta[n] * P[n + 1];
    const double scale = max_abs_term({t0, t1, t2});
    if (scale == 0.0) continue;
    worst = std::max(worst, std::fabs(t0 + t1 + t2) / scale);
  }
  return worst;
}

// --- outer ----------------------------------------------------------------

FiveTermCoeffs five_term_coeffs(const DerivedParams& dp, int N) {
  const double mu = dp.mu;
  const double s = dp.sigma;
  FiveTermCoeffs k;
  k.a.resize(N + 1);
  k.b.resize(N + 1);
  k.c.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double m = 2.0 * n + 2.0 * mu + 1.0;
    k.a[n] = (8.0 * mu * mu - 1.0) / (4.0 * s * s + 1.0) + dp.cos_theta * m * m +
             (2.0 * n * n + (2.0 * n + 1.0) * (2.0 * mu + 1.0));
    k.b[n] = -4.0 * s * dp.sin_theta * (n + mu + 1.0) * std::sqrt((n + 1.0) * (n + 2.0 * mu + 1.0));
    k.c[n] = std::sqrt((n + 1.0) * (n + 2.0) * (n + 2.0 * mu + 1.0) * (n + 2.0 * mu + 2.0));
  }
  return k;
}

cplx legendre_normalised(double degree, cplx order, double x) {
  return std::pow(2.0, degree + 1.0) * sf::gamma_complex(degree + 1.0 - order) *
         sf::assoc_legendre_complex_order(degree, order, x);
}

FiveTermInitials five_term_initials(const DerivedParams& dp, double G_phase) {
  const double mu = dp.mu;
  const double s = dp.sigma;
  const double sh = std::sinh(mu * kPi);
  if (std::fabs(sh) < 1e-8) throw CancellationError("five_term_initials: sinh(mu pi) too small");
  const double root = std::sqrt(4.0 * s * s + 1.0);
  const double x = 1.0 / root;
  const cplx imu(0.0, mu);
  const cplx P0m = legendre_normalised(mu - 0.5, -imu, x);
  const cplx P0p = legendre_normalised(mu - 0.5, imu, x);
  const cplx P1m = legendre_normalised(mu + 0.5, -imu, x);
  const cplx P1p = legendre_normalised(mu + 0.5, imu, x);
  const double inv_sqrt_lambda = 1.0 / std::sqrt(dp.lambda);
  const double pref0 = std::sqrt(s / std::tgamma(2.0 * mu + 1.0)) * std::pow(root, -mu - 0.5) * inv_sqrt_lambda / sh;
  const double pref1 = std::sqrt(s / std::tgamma(2.0 * mu + 2.0)) * std::pow(root, -mu - 1.5) * inv_sqrt_lambda / sh;

  FiveTermInitials init;
  for (int sign : {+1, -1}) {
    const double sg = sign;
    const cplx phase = std::polar(1.0, sg * G_phase);
    const double ep = std::exp(sg * mu * kPi / 2.0);
    const double em = std::exp(-sg * mu * kPi / 2.0);
    const cplx F0 = sg * phase * pref0 * (ep * P0m - em * P0p);
    const cplx F1 = std::sqrt(2.0 * mu + 1.0) * F0 - sg * phase * pref1 * (ep * P1m - em * P1p);
    auto& F = sign > 0 ? init.F_plus : init.F_minus;
    F[0] = F0;
    F[1] = F1;
  }

  // F_2, F_3 from the n = 0 and n = 1 rows with P_{-1} = P_{-2} = 0.
  const FiveTermCoeffs k = five_term_coeffs(dp, 2);
  for (auto* F : {&init.F_plus, &init.F_minus}) {
    auto& f = *F;
    f[2] = -(k.a[0] * f[0] + k.b[0] * f[1]) / k.c[0];
    f[3] = -(k.a[1] * f[1] + k.b[0] * f[0] + k.b[1] * f[2]) / k.c[1];
  }
  return init;
}

double five_term_residual(const std::vector<cplx>& P, const FiveTermCoeffs& k) {
  const int N = static_cast<int>(P.size());
  double worst = 0.0;
  for (int n = 2; n + 2 < N; ++n) {
    const cplx t[5] = {k.a[n] * P[n], k.b[n - 1] * P[n - 1], k.b[n] * P[n + 1], k.c[n - 2] * P[n - 2],
                       k.c[n] * P[n + 2]};
    double scale = 0.0;
    cplx sum = 0.0;
    for (const cplx& v : t) {
      scale = std::max(scale, std::abs(v));
      sum += v;
    }
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(sum) / scale);
  }
  return worst;
}

OuterCoefficients run_five_term(const DerivedParams& dp, const FiveTermInitials& init, int N,
                                const RecursionOptions& opt, Warnings* warnings) {
  if (N < 6) throw DomainError("run_five_term: N must be at least 6");
  const FiveTermCoeffs k = five_term_coeffs(dp, N);
  OuterCoefficients out;
  out.F_plus = run_recursion(k, init.F_plus, N, opt.extended_precision);
  out.F_minus = run_recursion(k, init.F_minus, N, opt.extended_precision);
  for (int n = 0; n < N; ++n) {
    if (!std::isfinite(out.F_plus[n].real()) || !std::isfinite(out.F_plus[n].imag()) ||
        !std::isfinite(out.F_minus[n].real()) || !std::isfinite(out.F_minus[n].imag())) {
      std::ostringstream msg;
      msg << "run_five_term: coefficient overflow at n = " << n;
      throw ConvergenceError(msg.str());
    }
  }
  out.a = k.a;
  out.b = k.b;
  out.c = k.c;
  out.S.resize(N);
  out.C.resize(N);
  double fmax = 0.0;
  for (int n = 0; n < N; ++n) fmax = std::max(fmax, std::abs(out.F_plus[n]));
  for (int n = 0; n < N; ++n) {
    const cplx& fp = out.F_plus[n];
    const cplx& fm = out.F_minus[n];
    out.S[n] = (0.5 * (fp + fm)).real();
    out.C[n] = ((fp - fm) / (2.0 * I)).real();
    const double d = std::abs(fm - std::conj(fp));
    out.max_conjugation_drift = std::max(out.max_conjugation_drift, d / fmax);
    if (out.first_drift_index < 0 && d > opt.drift_warning * std::abs(fp)) out.first_drift_index = n;
  }
  if (warnings && out.first_drift_index >= 0) {
    std::ostringstream msg;
    msg << "ConjugationDriftWarning: |F-_n - conj(F+_n)| / |F+_n| exceeds " << opt.drift_warning
        << " first at n = " << out.first_drift_index;
    warnings->push_back(msg.str());
  }
  out.max_residual = std::max(five_term_residual(out.F_plus, k), five_term_residual(out.F_minus, k));
  return out;
}

double eta_match(const DerivedParams& dp, const BasisSet& bs, const OuterCoefficients& outer, double amplitude) {
  const int N = static_cast<int>(outer.C.size());
  const double r0 = bs.r0;
  const double target = basis_sum(BasisKind::outer, outer.C, r0, bs);
  const auto c0 = run_three_term(SeriesKind::cosine, dp, 0.0, N, amplitude);
  const auto c1 = run_three_term(SeriesKind::cosine, dp, 1.0, N, amplitude);
  const double v0 = basis_sum(BasisKind::inner, c0.P, r0, bs);
  const double v1 = basis_sum(BasisKind::inner, c1.P, r0, bs);
  const double slope = v1 - v0;
  if (std::fabs(slope) < 1e-12 * std::fabs(target))
    throw DegenerateSlopeError("eta_match: inner cosine series at r0 does not depend on eta");
  return (target - v0) / slope;
}

}  // namespace jscatter
