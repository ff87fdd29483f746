#include <cmath>
#include <numbers>

#include "doctest.h"
#include "jscatter/coefficients.hpp"
#include "jscatter/oracle.hpp"
#include "jscatter/reference.hpp"
#include "jscatter/specfun.hpp"

using namespace jscatter;

namespace {

constexpr double pi = std::numbers::pi;
const RegularizationParams rp1{1.0, 1.0};

DerivedParams base(double sigma, double lambda = 1.0, double A = 3.0) {
  return derive({1, A, lambda, energy_from_sigma(sigma, lambda)}, rp1);
}

}  // namespace

TEST_CASE("basis functions") {
  const DerivedParams dp = base(3.0);
  const BasisSet bs = make_basis(dp, rp1, 100);
  const double r = 0.7, nu = dp.nu;
  const double phi0 = std::exp(-r / 2.0) * std::sqrt(1.0 / std::tgamma(2.0 * nu + 1.0)) * std::pow(r, nu + 0.5);
  CHECK(basis_eval(BasisKind::inner, 0, r, bs) == doctest::Approx(phi0).epsilon(1e-14));

  const double big = basis_eval(BasisKind::inner, 10000, 100.0, bs);
  CHECK(std::isfinite(big));
  // Past the turning point near 4n the weight e^{-r/2} wins.
  CHECK(std::fabs(basis_eval(BasisKind::inner, 10000, 1e5, bs)) < 1e-100);

  // phi_50(r0) against the 50-digit Laguerre and log-gamma normalisation.
  const double L = oracle::extended_precision("laguerre", {50, 2.0 * nu, 1.0}).value.real();
  const double norm = std::exp(0.5 * (std::lgamma(51.0) - std::lgamma(51.0 + 2.0 * nu)));
  CHECK(basis_eval(BasisKind::inner, 50, 1.0, bs) == doctest::Approx(norm * std::exp(-0.5) * L).epsilon(1e-12));

  // Recurrence-based values agree with the direct evaluation.
  std::vector<double> v(200);
  for (double x : {0.01, 0.5, 3.0, 40.0}) {
    for (BasisKind k : {BasisKind::inner, BasisKind::outer}) {
      basis_values(k, 200, x, bs, v.data());
      for (int n : {0, 1, 17, 199}) CHECK(v[n] == doctest::Approx(basis_eval(k, n, x, bs)).epsilon(1e-11).scale(1e-300));
    }
  }
  CHECK_THROWS_AS(make_basis(dp, rp1, 3), DomainError);
}

TEST_CASE("three-term coefficients") {
  const DerivedParams half = base(0.5);
  const auto k = three_term_coeffs(half, 10);
  for (double a : k.alpha) CHECK(std::fabs(a) < 1e-14);
  CHECK(k.beta[0] == doctest::Approx(-std::sqrt(1.0 + std::sqrt(5.0))).epsilon(1e-15));
  CHECK(std::fabs(-std::sqrt(1.0 + std::sqrt(5.0)) - -1.7989074) < 1e-7);
  const auto k3 = three_term_coeffs(base(3.0), 10);
  const double nu = std::sqrt(5.0) / 2.0;
  CHECK(k3.alpha[0] / k3.alpha[1] == doctest::Approx((2 * nu + 1) / (2 * nu + 3)).epsilon(1e-15));
}

TEST_CASE("inner initial values") {
  const DerivedParams half = base(0.5);
  const double nu = half.nu;
  const auto s = inner_initials(SeriesKind::sine, half, 0.0);
  CHECK(std::fabs(s[1]) < 1e-15);
  CHECK(std::fabs(tau_of(half)) < 1e-15);
  CHECK(std::fabs(inner_initials(SeriesKind::cosine, half, 0.3)[0]) < 1e-15);
  const double s0 = std::tgamma(nu + 0.5) * std::pow(2.0, nu + 0.5) / (std::sqrt(2.0 * pi) * std::sqrt(std::tgamma(2 * nu + 1)));
  CHECK(s[0] == doctest::Approx(s0).epsilon(1e-13));

  const DerivedParams dp = base(3.0);
  const double c0 = inner_initials(SeriesKind::cosine, dp, 0.0)[1];
  const double c1 = inner_initials(SeriesKind::cosine, dp, 1.0)[1];
  const double c2 = inner_initials(SeriesKind::cosine, dp, 2.0)[1];
  CHECK(std::fabs((c2 - c1) - (c1 - c0)) < 1e-14 * std::fabs(c1 - c0));
  CHECK(c1 - c0 == doctest::Approx(cosine_eta_slope(dp)).epsilon(1e-13));
  CHECK(cosine_eta_slope(dp) < 0.0);
}

TEST_CASE("three-term recursion") {
  const DerivedParams half = base(0.5);
  const auto s = run_three_term(SeriesKind::sine, half, 0.0, 10);
  const auto k = three_term_coeffs(half, 10);
  CHECK(s.P[2] == doctest::Approx(-(k.beta[0] / k.beta[1]) * s.P[0]).epsilon(1e-14));

  const DerivedParams dp = base(3.0);
  for (SeriesKind kind : {SeriesKind::sine, SeriesKind::cosine}) {
    const auto c = run_three_term(kind, dp, 0.37, 1000);
    CHECK(three_term_residual(c) < 1e-12);
    const auto ext = oracle::extended_three_term(dp, kind == SeriesKind::cosine, 0.37, 21);
    for (int n = 0; n <= 20; ++n) CHECK(std::fabs(c.P[n] - ext[n]) <= 1e-10 * std::fabs(ext[n]) + 1e-300);
  }

  // S_n scales as lambda^{-1/2} at fixed sigma.
  const auto a = run_three_term(SeriesKind::sine, base(3.0, 1.0), 0.0, 11);
  const auto b = run_three_term(SeriesKind::sine, base(3.0, 4.0), 0.0, 11);
  for (int n = 0; n <= 10; ++n) CHECK(std::fabs(b.P[n] / a.P[n] - 0.5) < 1e-12);
}

TEST_CASE("five-term coefficients") {
  const DerivedParams dp = base(3.0);
  const auto k = five_term_coeffs(dp, 20);
  const double mu = std::sqrt(3.0) / 2.0;
  CHECK(k.c[0] == doctest::Approx(std::sqrt(2.0 * (2 * mu + 1) * (2 * mu + 2))).epsilon(1e-15));
  const double a0 = (8 * 0.75 - 1) / 37.0 + (35.0 / 37.0) * (2 * mu + 1) * (2 * mu + 1) + (2 * mu + 1);
  CHECK(k.a[0] == doctest::Approx(a0).epsilon(1e-15));
  for (int n = 0; n < 20; ++n) {
    CHECK(k.b[n] < 0.0);
    CHECK(k.c[n] > 0.0);
    const double ratio = k.b[n] / (-4.0 * dp.sigma * dp.sin_theta);
    CHECK(ratio == doctest::Approx((n + mu + 1) * std::sqrt((n + 1) * (n + 2 * mu + 1))).epsilon(1e-14));
  }
}

TEST_CASE("five-term initial values and recursion") {
  const DerivedParams dp = base(3.0);
  const auto init0 = five_term_initials(dp, 0.0);
  CHECK(std::abs(init0.F_plus[0] - cplx(0.125096277746924, 0.0483075896016628)) < 1e-13);
  CHECK(std::abs(init0.F_plus[1] - cplx(0.214318847638243, 0.0473797510267934)) < 1e-13);

  const double G = solve_matching(dp, rp1).G_phase;
  const auto init = five_term_initials(dp, G);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(init.F_minus[i] - std::conj(init.F_plus[i])) < 1e-14);

  const auto out = run_five_term(dp, init, 1000);
  CHECK(out.max_conjugation_drift <= 1e-8);
  CHECK(out.max_residual <= 1e-9);
  CHECK(five_term_residual(out.F_plus, five_term_coeffs(dp, 1000)) <= 1e-9);
  for (int n = 0; n < 1000; n += 37) {
    CHECK(out.F_plus[n].real() == out.S[n]);
    CHECK(out.F_plus[n].imag() == out.C[n]);
  }
  const auto ext = oracle::extended_five_term(dp, G, 21, +1);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(out.F_plus[n] - ext[n]) <= 1e-8 * std::abs(ext[n]));

  // Extended-precision recursion path agrees with the double one.
  RecursionOptions mp;
  mp.extended_precision = true;
  const auto out_mp = run_five_term(dp, init, 200, mp);
  for (int n = 0; n < 200; n += 19) CHECK(std::abs(out_mp.F_plus[n] - out.F_plus[n]) <= 1e-10 * std::abs(out.F_plus[n]));
}

TEST_CASE("eta matching") {
  const DerivedParams dp = base(3.0);
  const double G = solve_matching(dp, rp1).G_phase;
  const auto out = run_five_term(dp, five_term_initials(dp, G), 1000);
  const BasisSet bs = make_basis(dp, rp1, 1000);
  const double eta = eta_match(dp, bs, out);
  const auto c = run_three_term(SeriesKind::cosine, dp, eta, 1000);
  const double inner = basis_sum(BasisKind::inner, c.P, rp1.r0, bs);
  const double outer = basis_sum(BasisKind::outer, out.C, rp1.r0, bs);
  CHECK(std::fabs(inner - outer) <= 1e-9 * std::fabs(outer));
}
