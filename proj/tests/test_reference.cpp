#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "jscatter/oracle.hpp"
#include "jscatter/reference.hpp"
#include "jscatter/specfun.hpp"

using namespace jscatter;

namespace {

constexpr double pi = std::numbers::pi;
const RegularizationParams rp1{1.0, 1.0};

DerivedParams base(double sigma) { return derive({1, 3.0, 1.0, energy_from_sigma(sigma, 1.0)}, rp1); }

// H^{s}_a(x) from the extended-precision J oracle.
cplx oracle_hankel(int s, cplx a, double x) {
  const cplx ja = oracle::extended_precision("bessel_j", {a.real(), a.imag(), x}).value;
  const cplx jm = oracle::extended_precision("bessel_j", {-a.real(), -a.imag(), x}).value;
  const cplx y = (std::cos(a * pi) * ja - jm) / std::sin(a * pi);
  return ja + double(s) * cplx(0, 1) * y;
}

double rel_residual(const ValueAndSlope& a, const ValueAndSlope& b) {
  const double v = std::abs(a.value - b.value) / std::max(std::abs(a.value), 1e-300);
  const double d = std::abs(a.slope - b.slope) / std::max(std::abs(a.slope), 1e-300);
  return std::max(v, d);
}

}  // namespace

TEST_CASE("helper factors") {
  using specfun::bessel_lambda;
  CHECK(std::abs(bessel_lambda(+1, 1.0) - 1.5) < 1e-15);
  CHECK(std::abs(bessel_lambda(-1, 1.0) + 0.5) < 1e-15);
  const cplx a(0.0, 0.866);
  CHECK(std::abs(bessel_lambda(+1, a) + bessel_lambda(-1, a) - 1.0 / a) < 1e-15);
  CHECK(std::abs(bessel_lambda(+1, a) + bessel_lambda(-1, -a)) < 1e-15);

  const DerivedParams dp = base(3.0);
  const HelperFactors h = helper_factors(dp, rp1);
  const double mu = dp.mu, x0 = dp.k * rp1.r0;
  const cplx I(0, 1);
  auto xi = [&](int s, cplx alpha) { return 0.5 * std::exp(-double(s) * pi * alpha / 2.0) * oracle_hankel(s, I * alpha, x0); };
  CHECK(std::abs(h.xi_plus - xi(+1, mu)) < 1e-12 * std::abs(h.xi_plus));
  CHECK(std::abs(h.xi_minus - xi(-1, mu)) < 1e-12 * std::abs(h.xi_minus));
  const cplx lp = 1.0 / (2.0 * I * mu) + 1.0, lm = 1.0 / (2.0 * I * mu) - 1.0;
  for (int s : {+1, -1}) {
    const cplx g = (lp * xi(s, mu + I) - lm * xi(s, mu - I)) / (2.0 * xi(s, mu));
    const cplx got = s > 0 ? h.gamma_plus : h.gamma_minus;
    CHECK(std::abs(got - g) < 1e-11 * std::abs(g));
  }
}

TEST_CASE("matching at the baseline parameters") {
  const DerivedParams dp = base(3.0);
  const MatchingResult m = solve_matching(dp, rp1);
  // Frozen from the Numerov oracle (agrees to 1e-11).
  CHECK(std::fabs(m.G_phase - -1.46355873818737) < 1e-9);
  CHECK(std::fabs(std::abs(m.exp_plus_iG_check) - 1.0) < 1e-10);
  CHECK(std::abs(m.exp_plus_iG_check * m.exp_minus_iG_check - 1.0) < 1e-8);
  CHECK(std::abs(m.A_plus - 0.5 * std::exp(-pi * dp.mu / 2.0) * std::polar(1.0, m.G_phase)) < 1e-15);
  CHECK(std::abs(m.A_minus - 0.5 * std::exp(pi * dp.mu / 2.0) * std::polar(1.0, -m.G_phase)) < 1e-15);
  // The printed phase formula gives the same angle.
  CHECK(m.literal.agrees);

  for (Which w : {Which::regular, Which::irregular}) {
    const auto in = psi_reference_branch(w, Branch::inner, m, dp, rp1.r0);
    const auto out = psi_reference_branch(w, Branch::outer, m, dp, rp1.r0);
    CHECK(rel_residual(in, out) < 1e-10);
  }

  const auto num = oracle::numerov_phase({1, 3.0, 1.0, dp.energy}, rp1, PotentialSpec{});
  CHECK(std::fabs(reduce_angle(m.G_phase - num.extracted.G_phase)) < 1e-6);
}

TEST_CASE("continuity at r0 for random parameter sets") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> ell(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0;
  while (done < 20) {
    const int l = ell(rng);
    const double lh2 = (l + 0.5) * (l + 0.5);
    const PhysicalParams p{l, lh2 + 0.1 + 3.0 * u(rng), 0.5 + u(rng), 0.0};
    const RegularizationParams rp{0.05 + 1.5 * u(rng), lh2 - 0.1 - 2.0 * u(rng)};
    PhysicalParams q = p;
    q.energy = energy_from_sigma(0.5 + 4.0 * u(rng), p.lambda);
    DerivedParams dp;
    try {
      dp = derive(q, rp);
    } catch (const DomainError&) {
      continue;  // integer nu or tiny mu
    }
    const MatchingResult m = solve_matching(dp, rp);
    for (Which w : {Which::regular, Which::irregular}) {
      const auto in = psi_reference_branch(w, Branch::inner, m, dp, rp.r0);
      const auto out = psi_reference_branch(w, Branch::outer, m, dp, rp.r0);
      CHECK(rel_residual(in, out) < 1e-8);
    }
    CHECK(std::fabs(std::abs(m.exp_plus_iG_check) - 1.0) < 1e-10);
    ++done;
  }
}

TEST_CASE("wavefunction limits") {
  const DerivedParams dp = base(3.0);
  const MatchingResult m = solve_matching(dp, rp1);
  const double eps = 1e-4;
  CHECK(psi_regular(m, dp, rp1, 2 * eps) / psi_regular(m, dp, rp1, eps) ==
        doctest::Approx(std::pow(2.0, dp.nu + 0.5)).epsilon(1e-6));
  const double r = 50.0, ph = dp.k * r + m.G_phase - pi / 4.0;
  CHECK(std::fabs(psi_regular(m, dp, rp1, r) - std::sqrt(2.0 / pi) * std::cos(ph)) < 0.01 * std::sqrt(2.0 / pi));
  CHECK(std::fabs(psi_irregular(m, dp, rp1, r).real() - std::sqrt(2.0 / pi) * std::sin(ph)) < 0.01 * std::sqrt(2.0 / pi));
}

TEST_CASE("phase is continuous in sigma and depends on the regularisation") {
  double prev = solve_matching(base(0.5), rp1).G_phase;
  for (int i = 1; i <= 90; ++i) {
    const double g = solve_matching(base(0.5 + 0.05 * i), rp1).G_phase;
    CHECK(std::fabs(std::remainder(g - prev, 2.0 * pi)) < pi / 2.0);
    prev = g;
  }
  const auto p = PhysicalParams{1, 3.0, 1.0, energy_from_sigma(2.0, 1.0)};
  const double g1 = solve_matching(derive(p, {1.0, 1.0}), {1.0, 1.0}).G_phase;
  const double g2 = solve_matching(derive(p, {1.0, 2.0}), {1.0, 2.0}).G_phase;
  CHECK(std::fabs(g1 - g2) > 1e-6);
}
