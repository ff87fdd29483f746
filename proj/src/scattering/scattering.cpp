#include "jscatter/scattering.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jscatter/specfun.hpp"

namespace jscatter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGaussOrder = 24;
constexpr double kDriftError = 1e-6;
constexpr double kDriftWarning = 1e-9;
constexpr double kMaxCondition = 1e12;
constexpr double kUnitarityWarning = 1e-4;
constexpr double kPotentialFloor = 1e-18;

double j_prefactor(const DerivedParams& dp) {
  return -0.5 * dp.lambda * dp.lambda * (dp.sigma * dp.sigma + 0.25);
}

// sum_q w_q f(r_q) chi_n(r_q) chi_m(r_q) over the given nodes.
Eigen::MatrixXd weighted_gram(const BasisSet& bs, int N, const std::vector<double>& r, const std::vector<double>& w) {
  const int q = static_cast<int>(r.size());
  Eigen::MatrixXd B(N, q);
  std::vector<double> col(N);
  for (int j = 0; j < q; ++j) {
    basis_values(BasisKind::outer, N, r[j], bs, col.data());
    for (int n = 0; n < N; ++n) B(n, j) = col[n];
  }
  const Eigen::Map<const Eigen::VectorXd> wv(w.data(), q);
  Eigen::MatrixXd M = B * wv.asDiagonal() * B.transpose();
  return 0.5 * (M + M.transpose());
}

template <class Build>
Eigen::MatrixXd with_doubling(Build&& build, int panels, QuadratureCheck* check, const char* who) {
  Eigen::MatrixXd coarse = build(panels);
  Eigen::MatrixXd fine = build(2 * panels);
  const double drift = (fine - coarse).cwiseAbs().maxCoeff();
  if (check) {
    check->nodes = 2 * panels * kGaussOrder;
    check->max_drift = drift;
  }
  if (drift > kDriftError) {
    std::ostringstream msg;
    msg << who << ": doubling the quadrature changed an element by " << drift;
    throw QuadratureError(msg.str());
  }
  return fine;
}

}  // namespace

double JOperatorBand::at(int n, int m) const {
  const int d = std::abs(n - m);
  const int lo = std::min(n, m);
  if (d == 0) return diag.at(n);
  if (d == 1) return off1.at(lo);
  if (d == 2) return off2.at(lo);
  return 0.0;
}

JOperatorBand j_band(const DerivedParams& dp, int N) {
  const FiveTermCoeffs k = five_term_coeffs(dp, N + 1);
  const double pref = j_prefactor(dp);
  JOperatorBand band;
  band.N = N;
  band.diag.resize(N);
  band.off1.resize(N);
  band.off2.resize(N);
  for (int n = 0; n < N; ++n) {
    band.diag[n] = pref * k.a[n];
    band.off1[n] = pref * k.b[n];
    band.off2[n] = pref * k.c[n];
  }
  return band;
}

Eigen::MatrixXd potential_matrix(const PotentialSpec& U, const BasisSet& bs, int N, QuadratureCheck* check) {
  if (U.is_zero()) {
    if (check) *check = {};
    return Eigen::MatrixXd::Zero(N, N);
  }
  const double lo = bs.r0;
  const double hi = std::max(lo, U.cutoff_radius(kPotentialFloor));
  if (hi <= lo) {
    if (check) *check = {};
    return Eigen::MatrixXd::Zero(N, N);
  }
  const int panels = std::max(16, static_cast<int>(std::ceil(2.0 * bs.lambda * (hi - lo))) + N / 4);
  auto build = [&](int np) {
    const auto rule = specfun::composite_gauss_legendre(np, kGaussOrder, lo, hi);
    std::vector<double> w(rule.weights.size());
    for (size_t j = 0; j < w.size(); ++j) w[j] = rule.weights[j] * U(rule.nodes[j]);
    return weighted_gram(bs, N, rule.nodes, w);
  };
  return with_doubling(build, panels, check, "potential_matrix");
}

Eigen::MatrixXd correction_matrix(double A, double A0, const BasisSet& bs, int N, QuadratureCheck* check) {
  // r = r0 t^2 removes the r^{2 zeta} endpoint singularity of the integrand.
  const double r0 = bs.r0;
  const int panels = std::max(8, N / 8);
  auto build = [&](int np) {
    const auto rule = specfun::composite_gauss_legendre(np, kGaussOrder, 0.0, 1.0);
    std::vector<double> r(rule.nodes.size()), w(rule.nodes.size());
    for (size_t j = 0; j < r.size(); ++j) {
      const double t = rule.nodes[j];
      r[j] = r0 * t * t;
      const double jac = 2.0 * r0 * t;
      w[j] = rule.weights[j] * jac * (A - A0) / (2.0 * r[j] * r[j]);
    }
    return weighted_gram(bs, N, r, w);
  };
  return with_doubling(build, panels, check, "correction_matrix");
}

InnerBlock inner_block(const PhysicalParams& p, const DerivedParams& dp, const RegularizationParams& rp,
                       const PotentialSpec& U, const BasisSet& bs, int N, Warnings* warnings) {
  InnerBlock blk;
  const JOperatorBand band = j_band(dp, N);
  blk.J = Eigen::MatrixXd::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    blk.J(n, n) = band.diag[n];
    if (n + 1 < N) blk.J(n, n + 1) = blk.J(n + 1, n) = band.off1[n];
    if (n + 2 < N) blk.J(n, n + 2) = blk.J(n + 2, n) = band.off2[n];
  }
  blk.U = potential_matrix(U, bs, N, &blk.u_check);
  blk.correction = correction_matrix(p.A, rp.A0, bs, N, &blk.correction_check);
  blk.total = blk.J + blk.U + blk.correction;
  if (warnings) {
    for (const auto* c : {&blk.u_check, &blk.correction_check}) {
      if (c->max_drift > kDriftWarning) {
        std::ostringstream msg;
        msg << "quadrature doubling drift " << c->max_drift << " exceeds " << kDriftWarning;
        warnings->push_back(msg.str());
      }
    }
  }
  return blk;
}

GreenElements green_elements(const Eigen::MatrixXd& block, double scale) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const int N = static_cast<int>(block.rows());
  if (N < 2 || block.cols() != N) throw DomainError("green_elements: block must be square with N >= 2");
  if (!(scale > 0.0)) throw DomainError("green_elements: scale must be positive");
  const MatL A = static_cast<long double>(scale) * block.cast<long double>();
  Eigen::PartialPivLU<MatL> lu(A);
  GreenElements g;
  const long double rcond = lu.rcond();
  g.cond_estimate = rcond > 0.0L ? static_cast<double>(1.0L / rcond) : std::numeric_limits<double>::infinity();
  if (!(g.cond_estimate <= kMaxCondition)) {
    std::ostringstream msg;
    msg << "green_elements: block condition estimate " << g.cond_estimate << " (E near a block eigenvalue)";
    throw NearSingularError(msg.str());
  }
  VecL e = VecL::Zero(N);
  e(N - 1) = 1.0L;
  const VecL col = lu.solve(e);
  g.g_NN = static_cast<double>(col(N - 1));
  g.g_NM = static_cast<double>(col(N - 2));
  g.solve_residual = static_cast<double>((A * col - e).cwiseAbs().maxCoeff());
  return g;
}

Ratios ratios(const OuterCoefficients& outer, int n) {
  if (n < 1 || n >= static_cast<int>(outer.F_plus.size())) throw DomainError("ratios: index out of range");
  const cplx fp = outer.F_plus[n], fm = outer.F_minus[n];
  const cplx fp1 = outer.F_plus[n - 1], fm1 = outer.F_minus[n - 1];
  if (std::abs(fm) == 0.0 || std::abs(fp1) == 0.0 || std::abs(fm1) == 0.0) {
    std::ostringstream msg;
    msg << "ratios: zero coefficient at n = " << n << " (perturb E)";
    throw ZeroDenominatorError(msg.str());
  }
  return {fp / fm, fp / fp1, fm / fm1};
}

cplx physical_s(cplx S_raw, double G_phase) { return -std::conj(S_raw) * std::polar(1.0, 2.0 * G_phase); }

double reduce_half_angle(double a) {
  double r = std::remainder(a, kPi);
  if (r <= -kPi / 2.0) r += kPi;
  return r;
}

std::vector<double> unwrap_half_angles(const std::vector<double>& delta) {
  std::vector<double> out(delta);
  for (size_t i = 1; i < out.size(); ++i) {
    const double step = std::remainder(delta[i] - delta[i - 1], kPi);
    out[i] = out[i - 1] + step;
  }
  return out;
}

SMatrixResult s_matrix(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U, int N,
                       const SMatrixOptions& opt, Warnings* warnings) {
  if (N < 10) throw DomainError("s_matrix: N must be at least 10");
  if (!(opt.operator_scale > 0.0)) throw DomainError("s_matrix: operator_scale must be positive");
  const DerivedParams dp = derive(p, rp);
  const MatchingResult m = solve_matching(dp, rp);
  const OuterCoefficients outer =
      run_five_term(dp, five_term_initials(dp, m.G_phase), N + 2, opt.recursion, warnings);
  const BasisSet bs = make_basis(dp, rp, N);
  const InnerBlock blk = inner_block(p, dp, rp, U, bs, N, warnings);
  const JOperatorBand band = j_band(dp, N);

  const double scale = opt.operator_scale;
  SMatrixResult res;
  res.green = green_elements(blk.total, scale);
  res.J_N1_N = scale * band.off1[N - 1];
  res.J_N2_N = scale * band.off2[N - 2];
  res.J_N1_N1 = scale * band.off2[N - 1];

  const Ratios rN = ratios(outer, N);
  const Ratios rN1 = ratios(outer, N + 1);
  res.T = ratios(outer, N - 1).T;
  res.R_plus_N = rN.R_plus;
  res.R_plus_N1 = rN1.R_plus;
  res.R_minus_N = rN.R_minus;
  res.R_minus_N1 = rN1.R_minus;

  const double gNN = res.green.g_NN, gNM = res.green.g_NM;
  auto bracket = [&](cplx RN, cplx RN1) {
    return 1.0 + (gNN * res.J_N1_N + gNM * res.J_N2_N) * RN + gNN * res.J_N1_N1 * RN1 * RN;
  };
  const cplx den = bracket(res.R_minus_N, res.R_minus_N1);
  if (std::abs(den) == 0.0) throw ZeroDenominatorError("s_matrix: vanishing denominator bracket");
  res.S_raw = res.T * bracket(res.R_plus_N, res.R_plus_N1) / den;
  res.S = physical_s(res.S_raw, m.G_phase);
  res.delta = reduce_half_angle(0.5 * std::arg(res.S));
  res.G_phase = m.G_phase;
  res.N_used = N;
  res.max_conjugation_drift = outer.max_conjugation_drift;
  if (warnings && std::fabs(std::abs(res.S) - 1.0) > kUnitarityWarning) {
    std::ostringstream msg;
    msg << "UnitarityWarning: ||S| - 1| = " << std::fabs(std::abs(res.S) - 1.0) << " at sigma = " << dp.sigma;
    warnings->push_back(msg.str());
  }
  return res;
}

}  // namespace jscatter
