#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "jscatter/coefficients.hpp"
#include "jscatter/reference.hpp"

namespace jscatter {

// Pentadiagonal reference wave operator J_{n,m}; off1[n] = J_{n,n+1},
// off2[n] = J_{n,n+2}.
struct JOperatorBand {
  int N = 0;
  std::vector<double> diag;
  std::vector<double> off1;
  std::vector<double> off2;

  double at(int n, int m) const;
};

// Bands for 0 <= n < N (off-diagonals reach index N+1).
JOperatorBand j_band(const DerivedParams& dp, int N);

struct QuadratureCheck {
  int nodes = 0;
  double max_drift = 0.0;  // max element change when the node count is doubled
};

// <chi_n | U 1[r > r0] | chi_m>
Eigen::MatrixXd potential_matrix(const PotentialSpec& U, const BasisSet& bs, int N, QuadratureCheck* check = nullptr);

// <chi_n | (A - A0) / (2 r^2) 1[r <= r0] | chi_m>
Eigen::MatrixXd correction_matrix(double A, double A0, const BasisSet& bs, int N, QuadratureCheck* check = nullptr);

struct InnerBlock {
  Eigen::MatrixXd J;
  Eigen::MatrixXd U;
  Eigen::MatrixXd correction;
  Eigen::MatrixXd total;
  QuadratureCheck u_check;
  QuadratureCheck correction_check;
};

InnerBlock inner_block(const PhysicalParams& p, const DerivedParams& dp, const RegularizationParams& rp,
                       const PotentialSpec& U, const BasisSet& bs, int N, Warnings* warnings = nullptr);

struct GreenElements {
  double g_NN = 0.0;  // G_{N-1,N-1}
  double g_NM = 0.0;  // G_{N-1,N-2}
  double cond_estimate = 0.0;
  double solve_residual = 0.0;
};

// The factorisation runs in long double on scale * block, so a positive
// rescaling of the block changes g only at the 1e-19 level.
GreenElements green_elements(const Eigen::MatrixXd& block, double scale = 1.0);

struct Ratios {
  cplx T;
  cplx R_plus;
  cplx R_minus;
};

// T_n = F+_n / F-_n, R±_n = F±_n / F±_{n-1}
Ratios ratios(const OuterCoefficients& outer, int n);

struct SMatrixOptions {
  // Positive factor applied to the whole reference operator (block and the
  // J couplings beyond it); S must not depend on it.
  double operator_scale = 1.0;
  RecursionOptions recursion{};
};

struct SMatrixResult {
  cplx S;      // physical convention: S = e^{2 i delta}, S = e^{2iG} for U = 0
  cplx S_raw;  // the J-matrix formula exactly as assembled
  cplx T;      // T_{N-1}
  cplx R_plus_N;
  cplx R_plus_N1;
  cplx R_minus_N;
  cplx R_minus_N1;
  double J_N1_N = 0.0;   // J_{N-1,N}
  double J_N2_N = 0.0;   // J_{N-2,N}
  double J_N1_N1 = 0.0;  // J_{N-1,N+1}
  GreenElements green;
  double delta = 0.0;  // arg(S)/2 in (-pi/2, pi/2]
  double G_phase = 0.0;
  int N_used = 0;
  double max_conjugation_drift = 0.0;
};

SMatrixResult s_matrix(const PhysicalParams& p, const RegularizationParams& rp, const PotentialSpec& U, int N,
                       const SMatrixOptions& opt = {}, Warnings* warnings = nullptr);

// Map the assembled J-matrix value onto the physical convention.
cplx physical_s(cplx S_raw, double G_phase);

// Reduce to (-pi/2, pi/2].
double reduce_half_angle(double a);

// Remove jumps of +-pi between neighbours (delta is defined mod pi).
std::vector<double> unwrap_half_angles(const std::vector<double>& delta);

}  // namespace jscatter
