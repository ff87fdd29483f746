#pragma once

#include <array>
#include <complex>
#include <vector>

#include "jscatter/model.hpp"

namespace jscatter {

using cplx = std::complex<double>;

enum class BasisKind { inner, outer };
enum class SeriesKind { sine, cosine };

// Split Laguerre basis: phi_n (inner, power nu+1/2, L^{2nu}) for r <= r0 and
// chi_n (outer, power zeta+1, L^{2 zeta}) for r > r0.
struct BasisSet {
  int N = 0;
  double nu = 0.0;
  double zeta = 0.0;
  double lambda = 1.0;
  double r0 = 0.0;

  double alpha(BasisKind k) const { return k == BasisKind::inner ? 2.0 * nu : 2.0 * zeta; }
  double power(BasisKind k) const { return k == BasisKind::inner ? nu + 0.5 : zeta + 1.0; }
};

BasisSet make_basis(const DerivedParams& dp, const RegularizationParams& rp, int N);

double basis_eval(BasisKind which, int n, double r, const BasisSet& bs);

// All of phi_0..phi_{count-1} (or chi) at r via the normalised Laguerre
// recurrence; O(count).
void basis_values(BasisKind which, int count, double r, const BasisSet& bs, double* out);

// sum_n coeff[n] * basis_n(r) in a single recurrence pass.
double basis_sum(BasisKind which, const std::vector<double>& coeff, double r, const BasisSet& bs);

// --- inner (three-term) ---------------------------------------------------

struct ThreeTermCoeffs {
  std::vector<double> alpha;
  std::vector<double> beta;
};

ThreeTermCoeffs three_term_coeffs(const DerivedParams& dp, int N);

// tau(E) = cos(theta) 2F1(1/2, nu+1; 3/2; cos^2 theta)
double tau_of(const DerivedParams& dp);

std::array<double, 2> inner_initials(SeriesKind kind, const DerivedParams& dp, double eta);

// d C_1 / d eta
double cosine_eta_slope(const DerivedParams& dp);

struct InnerCoefficients {
  SeriesKind kind = SeriesKind::sine;
  std::vector<double> P;
  double eta = 0.0;
  double tau = 0.0;
  double amplitude = 1.0;  // overall factor applied to the initial values
  std::vector<double> alpha;
  std::vector<double> beta;
  double max_residual = 0.0;  // relative to the largest term of each row
};

InnerCoefficients run_three_term(SeriesKind kind, const DerivedParams& dp, double eta, int N, double amplitude = 1.0);

// |alpha_n P_n + beta_{n-1} P_{n-1} + beta_n P_{n+1}| / max term, max over 1 <= n <= N-2.
double three_term_residual(const InnerCoefficients& c);

// --- outer (five-term) ----------------------------------------------------

struct FiveTermCoeffs {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

FiveTermCoeffs five_term_coeffs(const DerivedParams& dp, int N);

struct FiveTermInitials {
  std::array<cplx, 4> F_plus;
  std::array<cplx, 4> F_minus;
};

// Normalised Legendre function used by the F_0, F_1 formulas:
// 2^{v+1} Gamma(v+1-m) P^m_v(x) with P the Ferrers function.
cplx legendre_normalised(double degree, cplx order, double x);

FiveTermInitials five_term_initials(const DerivedParams& dp, double G_phase);

struct RecursionOptions {
  bool extended_precision = false;  // 50-digit arithmetic for very long runs
  double drift_warning = 1e-6;
};

struct OuterCoefficients {
  std::vector<cplx> F_plus;
  std::vector<cplx> F_minus;
  std::vector<double> S;  // (F+ + F-)/2
  std::vector<double> C;  // (F+ - F-)/(2i)
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  double max_conjugation_drift = 0.0;  // max_n |F-_n - conj F+_n| / max_n |F+_n|
  int first_drift_index = -1;          // first n where the relative drift exceeds the warning level
  double max_residual = 0.0;
};

OuterCoefficients run_five_term(const DerivedParams& dp, const FiveTermInitials& init, int N,
                                const RecursionOptions& opt = {}, Warnings* warnings = nullptr);

// Five-term residual relative to the largest term of each row, 2 <= n <= N-3.
double five_term_residual(const std::vector<cplx>& P, const FiveTermCoeffs& k);

// eta that makes the inner and outer cosine series agree at r0.
double eta_match(const DerivedParams& dp, const BasisSet& bs, const OuterCoefficients& outer, double amplitude = 1.0);

}  // namespace jscatter
