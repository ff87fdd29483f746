#include <Eigen/Dense>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "jscatter/oracle.hpp"

namespace jscatter::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// The radial equation in t = ln r with u = psi / sqrt(r):
//   u''(t) = f(t) u(t),  f = (l+1/2)^2 - A_eff + r^2 (2 U - k^2),
// so the inverse-square terms become constants and the potential step at r0
// is a jump of f between two smooth pieces.
struct Problem {
  double k = 0.0;
  double inner_const = 0.0;  // nu^2
  double outer_const = 0.0;  // -mu^2
  double r0 = 0.0;
  bool single_piece = false;
  PotentialSpec U;

  double f_inner(double r) const { return inner_const - k * k * r * r; }
  double f_outer(double r) const { return outer_const + r * r * (2.0 * U(r) - k * k); }
};

struct Trace {
  std::vector<double> r;
  std::vector<double> u;
};

// Summed form of Numerov: with y = (1 - h^2 f / 12) u the update is
//   (y_{n+1} - y_n) = (y_n - y_{n-1}) + h^2 f_n u_n,
// kept in long double; the plain three-term form loses ~eps N^2 over 1e6 steps.
void numerov_segment(const std::function<double(double)>& f, double t0, double h, int steps, double u0, double u1,
                     Trace& out) {
  using ld = long double;
  const ld h2 = static_cast<ld>(h) * h, h12 = h2 / 12.0L;
  ld fc = f(std::exp(t0 + h));
  ld y_prev = (1.0L - h12 * f(std::exp(t0))) * u0;
  ld uc = u1;
  ld y = (1.0L - h12 * fc) * uc;
  ld dy = y - y_prev;
  for (int n = 1; n < steps; ++n) {
    const double r_next = std::exp(t0 + (n + 1) * h);
    const ld fn = f(r_next);
    dy += h2 * fc * uc;
    y += dy;
    const ld un = y / (1.0L - h12 * fn);
    out.r.push_back(r_next);
    out.u.push_back(static_cast<double>(un));
    uc = un;
    fc = fn;
  }
}

// One step of length h from (u, u') by classical RK4 with substeps; used to
// restart Numerov after the jump in f.
double rk4_start(const std::function<double(double)>& f, double t0, double h, double u, double du) {
  const int sub = 64;
  const double s = h / sub;
  double t = t0;
  for (int i = 0; i < sub; ++i) {
    auto acc = [&](double tt, double uu) { return f(std::exp(tt)) * uu; };
    const double k1u = du, k1v = acc(t, u);
    const double k2u = du + 0.5 * s * k1v, k2v = acc(t + 0.5 * s, u + 0.5 * s * k1u);
    const double k3u = du + 0.5 * s * k2v, k3v = acc(t + 0.5 * s, u + 0.5 * s * k2u);
    const double k4u = du + s * k3v, k4v = acc(t + s, u + s * k3u);
    u += s / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du += s / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    t += s;
  }
  return u;
}

Trace integrate(const Problem& pb, double r_start, double r_end, int steps) {
  const double ts = std::log(r_start), te = std::log(r_end);
  const bool split = !pb.single_piece && pb.r0 > r_start && pb.r0 < r_end;
  const double tsplit = split ? std::log(pb.r0) : te;
  const int n1 = split ? std::max(4, static_cast<int>(std::lround(steps * (tsplit - ts) / (te - ts)))) : steps;
  const int n2 = steps - n1;
  const double h1 = (tsplit - ts) / n1;

  // Regular start: u ~ r^nu (1 - (kr)^2 / (4 (nu + 1))).
  const double nu = std::sqrt(pb.inner_const);
  auto start = [&](double r) { return std::pow(r, nu) * (1.0 - pb.k * pb.k * r * r / (4.0 * (nu + 1.0))); };
  Trace tr;
  tr.r.reserve(steps + 2);
  tr.u.reserve(steps + 2);
  tr.r = {r_start, std::exp(ts + h1)};
  tr.u = {start(r_start), start(std::exp(ts + h1))};
  auto fin = [&](double r) { return pb.f_inner(r); };
  numerov_segment(fin, ts, h1, n1, tr.u[0], tr.u[1], tr);
  if (!split) return tr;

  // Derivative at r0 from the inner solution continued one virtual node.
  const size_t i0 = tr.u.size() - 1;
  const double h12 = h1 * h1 / 12.0;
  const double rv = std::exp(tsplit + h1);
  const double fv = pb.f_inner(rv), f0 = pb.f_inner(pb.r0), fm = pb.f_inner(tr.r[i0 - 1]);
  const double uv = (2.0 * tr.u[i0] * (1.0 + 5.0 * h12 * f0) - tr.u[i0 - 1] * (1.0 - h12 * fm)) / (1.0 - h12 * fv);
  const double du0 =
      (uv * (1.0 - h1 * h1 * fv / 6.0) - tr.u[i0 - 1] * (1.0 - h1 * h1 * fm / 6.0)) / (2.0 * h1);
  tr.r[i0] = pb.r0;

  const double h2 = (te - tsplit) / n2;
  auto fout = [&](double r) { return pb.f_outer(r); };
  const double u1 = rk4_start(fout, tsplit, h2, tr.u[i0], du0);
  tr.r.push_back(std::exp(tsplit + h2));
  tr.u.push_back(u1);
  numerov_segment(fout, tsplit, h2, n2, tr.u[i0], u1, tr);
  tr.r.back() = r_end;
  return tr;
}

WaveSamples to_samples(const Trace& tr) {
  WaveSamples w;
  w.label = WaveLabel::psi_reg;
  w.r = tr.r;
  w.value.resize(tr.u.size());
  for (size_t i = 0; i < tr.u.size(); ++i) w.value[i] = std::sqrt(tr.r[i]) * tr.u[i];
  return w;
}

using MpR = boost::multiprecision::cpp_bin_float_50;
using MpC = boost::multiprecision::cpp_complex_50;

// Hankel asymptotic expansion of H^{±}_{i mu}(x) at 50 digits, truncated at
// the smallest term.
cplx hankel_asymptotic_mp(int sign, double mu_d, double x_d) {
  const MpR mu(mu_d), x(x_d);
  const MpR pi = boost::math::constants::pi<MpR>();
  const MpC a(MpR(0), mu);
  const MpC step = sign > 0 ? MpC(MpR(0), MpR(1)) : MpC(MpR(0), MpR(-1));
  MpC term(1), sum(1);
  MpR last(1);
  for (int k = 1; k < 400; ++k) {
    const MpR odd = 2 * k - 1;
    term *= step * (4 * a * a - odd * odd) / (8 * k * x);
    const MpR mag = abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < MpR("1e-40")) break;
  }
  const MpC omega = x - a * pi / 2 - pi / 4;
  const MpC value = sqrt(2 / (pi * x)) * exp(step * omega) * sum;
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

}  // namespace

WaveSamples numerov_solve(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U,
                          double r_start, double r_end, int steps, const NumerovOptions& opt,
                          NumerovDiagnostics* diag) {
  if (!(p.energy > 0.0)) throw DomainError("numerov_solve: energy must be positive");
  if (!(r_start > 0.0 && r_start <= 1e-5 / p.lambda)) throw DomainError("numerov_solve: r_start must lie in (0, 1e-5/lambda]");
  if (!(r_end > r_start)) throw DomainError("numerov_solve: r_end must exceed r_start");
  if (steps < 100'000) throw DomainError("numerov_solve: at least 1e5 steps are required");

  Problem pb;
  const double lh2 = (p.ell + 0.5) * (p.ell + 0.5);
  pb.k = std::sqrt(2.0 * p.energy);
  pb.r0 = rp.r0;
  pb.U = U;
  if (opt.subcritical_test) {
    if (!(rp.A0 < lh2)) throw SubcriticalityError("numerov_solve: test mode needs A0 < (l+1/2)^2");
    pb.inner_const = lh2 - rp.A0;
    pb.single_piece = true;
  } else {
    const DerivedParams dp = derive(p, rp);
    pb.inner_const = dp.nu * dp.nu;
    pb.outer_const = -dp.mu * dp.mu;
  }

  Trace fine = integrate(pb, r_start, r_end, 2 * steps);
  NumerovDiagnostics d;
  d.steps = 2 * steps;
  if (opt.richardson_check) {
    const Trace coarse = integrate(pb, r_start, r_end, steps);
    // Compare amplitudes at r_end relative to the local oscillation scale.
    double scale = 0.0;
    const size_t tail = std::min<size_t>(fine.u.size(), 2000);
    for (size_t i = fine.u.size() - tail; i < fine.u.size(); ++i)
      scale = std::max(scale, std::fabs(std::sqrt(fine.r[i]) * fine.u[i]));
    const double a = std::sqrt(r_end) * coarse.u.back();
    const double b = std::sqrt(r_end) * fine.u.back();
    d.richardson_difference = std::fabs(a - b) / scale;
    if (d.richardson_difference > opt.richardson_tolerance) {
      std::ostringstream msg;
      msg << "numerov_solve: step halving changed psi(r_end) by " << d.richardson_difference << " (relative)";
      throw StiffnessError(msg.str());
    }
  }
  if (diag) *diag = d;
  return to_samples(fine);
}

double sample_at(const WaveSamples& s, double r) {
  const auto& x = s.r;
  if (x.size() < 4) throw DomainError("sample_at: too few samples");
  // Grid ends come from exp(t) and may sit an ulp inside r_start / r_end.
  if (r < x.front() && r >= x.front() * (1.0 - 1e-12)) r = x.front();
  if (r > x.back() && r <= x.back() * (1.0 + 1e-12)) r = x.back();
  if (r < x.front() || r > x.back()) throw DomainError("sample_at: r outside the sampled range");
  size_t i = static_cast<size_t>(std::lower_bound(x.begin(), x.end(), r) - x.begin());
  size_t lo = i >= 2 ? i - 2 : 0;
  lo = std::min(lo, x.size() - 4);
  double acc = 0.0;
  const double t = std::log(r);
  for (size_t a = lo; a < lo + 4; ++a) {
    double w = 1.0;
    for (size_t b = lo; b < lo + 4; ++b)
      if (b != a) w *= (t - std::log(x[b])) / (std::log(x[a]) - std::log(x[b]));
    // Interpolate u = psi / sqrt(r), which is smooth in ln r.
    acc += w * s.value[a] / std::sqrt(x[a]);
  }
  return acc * std::sqrt(r);
}

ExtractedS extract_S(const WaveSamples& samples, const DerivedParams& dp, double r1, double r2) {
  if (!(r1 >= 10.0 / dp.k && r2 >= 10.0 / dp.k)) throw DomainError("extract_S: match radii must be at least 10/k");
  if (std::fabs(std::sin(dp.k * (r2 - r1))) < 1e-3)
    throw IllConditionedMatchError("extract_S: k(r2 - r1) is too close to a multiple of pi");
  const double psi1 = sample_at(samples, r1);
  const double psi2 = sample_at(samples, r2);
  const double x1 = dp.k * r1, x2 = dp.k * r2;
  Eigen::Matrix2cd M;
  M << std::sqrt(x1) * hankel_asymptotic_mp(+1, dp.mu, x1), std::sqrt(x1) * hankel_asymptotic_mp(-1, dp.mu, x1),
      std::sqrt(x2) * hankel_asymptotic_mp(+1, dp.mu, x2), std::sqrt(x2) * hankel_asymptotic_mp(-1, dp.mu, x2);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
  ExtractedS out;
  out.condition = svd.singularValues()(0) / svd.singularValues()(1);
  if (!(out.condition < 1e6))
    throw IllConditionedMatchError("extract_S: match points are nearly degenerate (k(r2 - r1) near a multiple of pi)");
  const Eigen::Vector2cd A = M.fullPivLu().solve(Eigen::Vector2cd(psi1, psi2));
  out.A_plus = A(0);
  out.A_minus = A(1);
  out.S = out.A_plus / out.A_minus * std::exp(kPi * dp.mu);
  out.G_phase = std::arg(out.A_plus * std::exp(kPi * dp.mu / 2.0));
  return out;
}

PhaseOracle numerov_phase(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U, int steps) {
  const DerivedParams dp = derive(p, rp);
  PhaseOracle po;
  po.r_match1 = std::max({25.0 / dp.k, U.cutoff_radius(1e-16), rp.r0 * 2.0});
  po.r_match2 = po.r_match1 + kPi / (2.0 * dp.k);
  const double r_end = po.r_match2 + 2.0 * kPi / dp.k;
  const WaveSamples w = numerov_solve(p, rp, U, 1e-5 / p.lambda, r_end, steps, {}, &po.numerov);
  po.extracted = extract_S(w, dp, po.r_match1, po.r_match2);
  double d = std::remainder(0.5 * std::arg(po.extracted.S), kPi);
  if (d <= -kPi / 2.0) d += kPi;
  po.delta = d;
  return po;
}

}  // namespace jscatter::oracle
