#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jscatter/model.hpp"
#include "jscatter/wavefield.hpp"

namespace jscatter::oracle {

using cplx = std::complex<double>;

struct OracleResult {
  cplx value;
  int precision_digits = 0;
  std::string method;
};

// --- extended precision (50 significant digits, Boost.Multiprecision) -------
//
// fn_id and argument layout:
//   gamma        (re, im)
//   bessel_j     (order_re, order_im, x)
//   hankel_imag  (sign, mu, x)
//   2f1          (a, b, c, z)
//   legendre     (degree, order_re, order_im, x)      Ferrers convention
//   laguerre     (n, alpha, x)
//   three_term   (kind: 0 sine / 1 cosine, ell, A, A0, lambda, sigma, eta, n)
//   five_term    (ell, A, A0, lambda, sigma, G, n)    returns F+_n
OracleResult extended_precision(const std::string& fn_id, const std::vector<double>& args);

// Sequences from the same extended-precision recursions.
std::vector<double> extended_three_term(const DerivedParams& dp, bool cosine, double eta, int count);
std::vector<cplx> extended_five_term(const DerivedParams& dp, double G_phase, int count, int sign = +1);

// --- Numerov integration of the radial equation ------------------------------

struct NumerovOptions {
  // Use V = -A0 / (2 r^2) everywhere (closed-form test problem).
  bool subcritical_test = false;
  bool richardson_check = true;
  double richardson_tolerance = 1e-8;
};

struct NumerovDiagnostics {
  double richardson_difference = 0.0;  // relative change at r_end under step halving
  int steps = 0;
};

WaveSamples numerov_solve(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U,
                          double r_start, double r_end, int steps, const NumerovOptions& opt = {},
                          NumerovDiagnostics* diag = nullptr);

// psi at r by 4-point Lagrange interpolation in ln r.
double sample_at(const WaveSamples& samples, double r);

struct ExtractedS {
  cplx S;
  cplx A_plus;
  cplx A_minus;
  double G_phase = 0.0;  // arg(A+ e^{pi mu / 2}) for the reference problem
  double condition = 0.0;
};

ExtractedS extract_S(const WaveSamples& samples, const DerivedParams& dp, double r_match1, double r_match2);

struct PhaseOracle {
  ExtractedS extracted;
  double delta = 0.0;  // arg(S)/2 in (-pi/2, pi/2]
  double r_match1 = 0.0;
  double r_match2 = 0.0;
  NumerovDiagnostics numerov;
};

// Default match radii: r1 = max(25/k, radius where |U| < 1e-16),
// r2 = r1 + pi/(2k).
PhaseOracle numerov_phase(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U,
                          int steps = 1'000'000);

// --- independent integration oracles -----------------------------------------

// Adaptive Gauss-Kronrod matrix elements in the outer basis:
// <chi_n | U 1[r > r0] | chi_m> and <chi_n | (A - A0)/(2 r^2) 1[r <= r0] | chi_m>.
double adaptive_potential_element(const PotentialSpec& U, const DerivedParams& dp, const RegularizationParams& rp,
                                  int n, int m);
double adaptive_correction_element(double A, const DerivedParams& dp, const RegularizationParams& rp, int n, int m);

// Explicit dense inverse, entries (N-1, N-1) and (N-1, N-2).
std::pair<double, double> dense_inverse_green(const Eigen::MatrixXd& block);

}  // namespace jscatter::oracle
