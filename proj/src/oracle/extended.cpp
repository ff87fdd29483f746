// Extended-precision re-evaluation of the special functions and recursions.
// Everything here is written against Boost.Multiprecision 100-digit types (the ascending
// Bessel series near x = 100 cancels about 43 digits) and
// shares no numeric kernels with the primary double-precision path.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "jscatter/errors.hpp"
#include "jscatter/oracle.hpp"

namespace jscatter::oracle {

namespace {

using R = boost::multiprecision::cpp_bin_float_100;
using C = boost::multiprecision::cpp_complex_100;

constexpr int kDigits = 100;
const R kEps = R("1e-105");

R pi() { return boost::math::constants::pi<R>(); }

cplx to_double(const C& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

bool is_nonpositive_integer(const C& z) {
  return z.imag() == 0 && z.real() <= 0 && floor(z.real()) == z.real();
}

C log_gamma(C z) {
  if (is_nonpositive_integer(z)) throw PoleError("oracle gamma: pole");
  if (z.real() < R(0.5)) {
    return log(C(pi())) - log(sin(C(pi()) * z)) - log_gamma(C(1) - z);
  }
  C shift(1);
  while (z.real() < 60) {
    shift *= z;
    z += 1;
  }
  // Stirling series with Bernoulli numbers B_{2k}.
  C sum = (z - R(0.5)) * log(z) - z + log(2 * pi()) / 2;
  const C inv = C(1) / z;
  const C inv2 = inv * inv;
  C power = inv;
  for (int k = 1; k <= 50; ++k) {
    const R b = boost::math::bernoulli_b2n<R>(k);
    const C term = power * (b / R((2 * k) * (2 * k - 1)));
    sum += term;
    if (abs(term) < kEps * abs(sum)) break;
    power *= inv2;
  }
  return sum - log(shift);
}

C gamma(const C& z) { return exp(log_gamma(z)); }

C rgamma(const C& z) {
  if (is_nonpositive_integer(z)) return C(0);
  return exp(-log_gamma(z));
}

C bessel_j(const C& a, const R& x) {
  const R q = -(x * x) / 4;
  C term(1);
  C sum(1);
  for (int k = 1; k < 5000; ++k) {
    term *= q / (R(k) * (a + R(k)));
    sum += term;
    if (k > x && abs(term) < kEps * abs(sum)) break;
  }
  return exp(a * log(C(x / 2))) * rgamma(a + R(1)) * sum;
}

C hankel_imag(int sign, const R& mu, const R& x) {
  const C a(R(0), mu);
  const C jp = bessel_j(a, x);
  const C jm = bessel_j(-a, x);
  const C y = (cos(a * pi()) * jp - jm) / sin(a * pi());
  return sign > 0 ? jp + C(R(0), R(1)) * y : jp - C(R(0), R(1)) * y;
}

C hyp2f1(const C& a, const C& b, const C& c, const R& z) {
  if (!(z >= 0 && z < 1)) throw DomainError("oracle 2f1: z must lie in [0, 1)");
  C term(1);
  C sum(1);
  for (int k = 0; k < 200000; ++k) {
    term *= (a + R(k)) * (b + R(k)) / ((c + R(k)) * R(k + 1)) * z;
    sum += term;
    if (abs(term) == 0 || (k > 4 && abs(term) < kEps * abs(sum))) return sum;
  }
  throw ConvergenceError("oracle 2f1: series did not converge");
}

C ferrers(const R& degree, const C& order, const R& x) {
  const C f = hyp2f1(C(-degree), C(degree + 1), C(1) - order, (1 - x) / 2);
  return exp(order / 2 * log(C((1 + x) / (1 - x)))) * f * rgamma(C(1) - order);
}

R laguerre(int n, const R& alpha, const R& x) {
  R prev(0), cur(1);
  for (int k = 0; k < n; ++k) {
    const R next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

struct MpParams {
  R nu, mu, sigma, lambda, cos_t, sin_t;
};

MpParams from_physical(int ell, const R& A, const R& A0, const R& lambda, const R& sigma) {
  const R lh = R(ell) + R(0.5);
  MpParams m;
  m.nu = sqrt(lh * lh - A0);
  m.mu = sqrt(A - lh * lh);
  m.sigma = sigma;
  m.lambda = lambda;
  const R s2 = 4 * sigma * sigma;
  m.cos_t = (s2 - 1) / (s2 + 1);
  m.sin_t = 4 * sigma / (s2 + 1);
  return m;
}

MpParams from_derived(const DerivedParams& dp) {
  MpParams m;
  m.nu = dp.nu;
  m.mu = dp.mu;
  m.sigma = dp.sigma;
  m.lambda = dp.lambda;
  const R s2 = 4 * m.sigma * m.sigma;
  m.cos_t = (s2 - 1) / (s2 + 1);
  m.sin_t = 4 * m.sigma / (s2 + 1);
  return m;
}

std::vector<R> three_term_mp(const MpParams& m, bool cosine, const R& eta, int count) {
  using boost::math::tgamma;
  const R nu = m.nu;
  const R pref = pow(2 * m.sin_t, nu + R(0.5)) / sqrt(2 * pi() * m.lambda);
  const R S0 = tgamma(nu + R(0.5)) / sqrt(tgamma(2 * nu + 1)) * pref;
  const R S1 = 2 * tgamma(nu + R(1.5)) * m.cos_t / sqrt(tgamma(2 * nu + 2)) * pref;
  std::vector<R> P(count);
  if (!cosine) {
    P[0] = S0;
    if (count > 1) P[1] = S1;
  } else {
    const R tau = m.cos_t * hyp2f1(C(R(0.5)), C(nu + 1), C(R(1.5)), m.cos_t * m.cos_t).real();
    const R g = tgamma(nu + 1);
    P[0] = 2 * g / (sqrt(pi()) * tgamma(nu + R(0.5))) * tau * S0;
    if (count > 1) {
      P[1] = 2 / sqrt(pi()) * g *
             (tau * S1 / tgamma(nu + R(0.5)) -
              eta * pow(R(2), nu) * pow(m.sin_t, R(0.5) - nu) / (sqrt(pi() * m.lambda) * tgamma(2 * nu + 2)));
    }
  }
  for (int n = 1; n + 1 < count; ++n) {
    const R alpha = (2 * n + 2 * nu + 1) * m.cos_t;
    const R beta_prev = -sqrt(R(n) * (n + 2 * nu));
    const R beta = -sqrt(R(n + 1) * (n + 2 * nu + 1));
    P[n + 1] = -(alpha * P[n] + beta_prev * P[n - 1]) / beta;
  }
  return P;
}

std::vector<C> five_term_mp(const MpParams& m, const R& G, int count, int sign) {
  using boost::math::tgamma;
  const R mu = m.mu;
  const R s = m.sigma;
  const R sg(sign);
  const R root = sqrt(4 * s * s + 1);
  const R x = 1 / root;
  const C imu(R(0), mu);
  auto Pt = [&](const R& degree, const C& order) {
    return pow(R(2), degree + 1) * gamma(C(degree + 1) - order) * ferrers(degree, order, x);
  };
  const C phase = exp(C(R(0), sg * G));
  const R sh = sinh(mu * pi());
  const R ep = exp(sg * mu * pi() / 2);
  const R em = exp(-sg * mu * pi() / 2);
  const R inv_sqrt_lambda = 1 / sqrt(m.lambda);
  const C F0 = sg * phase / sh * sqrt(s / tgamma(2 * mu + 1)) * pow(root, -mu - R(0.5)) *
               (ep * Pt(mu - R(0.5), -imu) - em * Pt(mu - R(0.5), imu)) * inv_sqrt_lambda;
  const C F1 = sqrt(2 * mu + 1) * F0 - sg * phase / sh * sqrt(s / tgamma(2 * mu + 2)) * pow(root, -mu - R(1.5)) *
                                           (ep * Pt(mu + R(0.5), -imu) - em * Pt(mu + R(0.5), imu)) *
                                           inv_sqrt_lambda;
  auto a = [&](int n) {
    const R t = 2 * n + 2 * mu + 1;
    return (8 * mu * mu - 1) / (4 * s * s + 1) + m.cos_t * t * t + (2 * R(n) * n + (2 * n + 1) * (2 * mu + 1));
  };
  auto b = [&](int n) { return -4 * s * m.sin_t * (n + mu + 1) * sqrt(R(n + 1) * (n + 2 * mu + 1)); };
  auto c = [&](int n) { return sqrt(R(n + 1) * (n + 2) * (n + 2 * mu + 1) * (n + 2 * mu + 2)); };
  std::vector<C> P(std::max(count, 4));
  P[0] = F0;
  P[1] = F1;
  P[2] = -(a(0) * P[0] + b(0) * P[1]) / c(0);
  P[3] = -(a(1) * P[1] + b(0) * P[0] + b(1) * P[2]) / c(1);
  for (int n = 2; n + 2 < count; ++n) {
    P[n + 2] = -(a(n) * P[n] + b(n - 1) * P[n - 1] + b(n) * P[n + 1] + c(n - 2) * P[n - 2]) / c(n);
  }
  P.resize(count);
  return P;
}

void require_args(const std::vector<double>& args, size_t n, const std::string& fn) {
  if (args.size() != n) throw DomainError("extended_precision(" + fn + "): expected " + std::to_string(n) + " arguments");
}

}  // namespace

OracleResult extended_precision(const std::string& fn, const std::vector<double>& a) {
  OracleResult out;
  out.precision_digits = kDigits;
  if (fn == "gamma") {
    require_args(a, 2, fn);
    out.value = to_double(gamma(C(R(a[0]), R(a[1]))));
    out.method = "Stirling series with Bernoulli terms after upward shift, reflection for Re z < 1/2";
  } else if (fn == "bessel_j") {
    require_args(a, 3, fn);
    if (!(a[2] > 0)) throw DomainError("oracle bessel_j: x must be positive");
    out.value = to_double(bessel_j(C(R(a[0]), R(a[1])), R(a[2])));
    out.method = "ascending series";
  } else if (fn == "hankel_imag") {
    require_args(a, 3, fn);
    if (!(a[1] > 0 && a[2] > 0)) throw DomainError("oracle hankel_imag: mu and x must be positive");
    out.value = to_double(hankel_imag(a[0] > 0 ? 1 : -1, R(a[1]), R(a[2])));
    out.method = "J_{+-i mu} series and the Y quotient";
  } else if (fn == "2f1") {
    require_args(a, 4, fn);
    out.value = to_double(hyp2f1(C(R(a[0])), C(R(a[1])), C(R(a[2])), R(a[3])));
    out.method = "Gauss series";
  } else if (fn == "legendre") {
    require_args(a, 4, fn);
    if (!(a[3] > 0 && a[3] < 1)) throw DomainError("oracle legendre: x must lie in (0, 1)");
    out.value = to_double(ferrers(R(a[0]), C(R(a[1]), R(a[2])), R(a[3])));
    out.method = "Ferrers hypergeometric representation";
  } else if (fn == "laguerre") {
    require_args(a, 3, fn);
    out.value = static_cast<double>(laguerre(static_cast<int>(a[0]), R(a[1]), R(a[2])));
    out.method = "three-term recurrence";
  } else if (fn == "three_term") {
    require_args(a, 8, fn);
    const MpParams m = from_physical(static_cast<int>(a[1]), R(a[2]), R(a[3]), R(a[4]), R(a[5]));
    const int n = static_cast<int>(a[7]);
    out.value = static_cast<double>(three_term_mp(m, a[0] != 0.0, R(a[6]), n + 2)[n]);
    out.method = "three-term recursion";
  } else if (fn == "five_term") {
    require_args(a, 7, fn);
    const MpParams m = from_physical(static_cast<int>(a[0]), R(a[1]), R(a[2]), R(a[3]), R(a[4]));
    const int n = static_cast<int>(a[6]);
    out.value = to_double(five_term_mp(m, R(a[5]), n + 1, +1)[n]);
    out.method = "five-term recursion from the Legendre initial values";
  } else {
    throw DomainError("extended_precision: unknown fn_id '" + fn + "'");
  }
  return out;
}

std::vector<double> extended_three_term(const DerivedParams& dp, bool cosine, double eta, int count) {
  const auto P = three_term_mp(from_derived(dp), cosine, R(eta), count);
  std::vector<double> out(P.size());
  for (size_t i = 0; i < P.size(); ++i) out[i] = static_cast<double>(P[i]);
  return out;
}

std::vector<cplx> extended_five_term(const DerivedParams& dp, double G_phase, int count, int sign) {
  const auto P = five_term_mp(from_derived(dp), R(G_phase), count, sign);
  std::vector<cplx> out(P.size());
  for (size_t i = 0; i < P.size(); ++i) out[i] = to_double(P[i]);
  return out;
}

}  // namespace jscatter::oracle
