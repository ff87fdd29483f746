#pragma once

#include <complex>

#include "jscatter/model.hpp"

namespace jscatter {

using cplx = std::complex<double>;

struct HelperFactors {
  cplx lam_plus_nu;   // lambda^+_nu
  cplx lam_minus_nu;  // lambda^-_nu
  cplx lam_plus_imu;  // lambda^+_{i mu}
  cplx lam_minus_imu;
  cplx xi_plus;  // xi^+_mu = 1/2 e^{-pi mu/2} H^+_{i mu}(k r0)
  cplx xi_minus;
  cplx gamma_plus;
  cplx gamma_minus;
};

// The printed 2x2 system for B± and the phase formula evaluated with the
// unit inner amplitude it assumes. Kept for comparison with the continuity
// solve only.
struct LiteralMatchReport {
  cplx B_plus;
  cplx B_minus;
  cplx exp_plus_iG;   // e^{+iG} from the phase formula
  cplx exp_minus_iG;  // e^{-iG}
  double G_phase = 0.0;
  double modulus_plus = 0.0;
  double G_difference = 0.0;  // G_literal - G (reduced to (-pi, pi])
  bool agrees = false;        // |G_difference| <= 1e-6
};

struct MatchingResult {
  cplx B_plus;
  cplx B_minus;
  double G_phase = 0.0;  // principal branch (-pi, pi]
  cplx A_plus;
  cplx A_minus;
  // Inner amplitude of the regular solution: psi_reg = c_in sqrt(kr) J_nu(kr)
  // for r <= r0 (the outer piece carries the unit asymptotic normalisation).
  double inner_amplitude = 1.0;
  cplx exp_plus_iG_check;   // phase formula with the solved B± and inner_amplitude
  cplx exp_minus_iG_check;
  double condition_regular = 0.0;
  double condition_irregular = 0.0;
  LiteralMatchReport literal;
};

HelperFactors helper_factors(const DerivedParams& dp, const RegularizationParams& rp);

MatchingResult solve_matching(const DerivedParams& dp, const RegularizationParams& rp);

enum class Which { regular, irregular };
enum class Branch { inner, outer };

struct ValueAndSlope {
  cplx value;
  cplx slope;  // d/dr
};

// One branch (inner or outer) of the piecewise solution evaluated anywhere,
// used for continuity checks.
ValueAndSlope psi_reference_branch(Which which, Branch branch, const MatchingResult& m, const DerivedParams& dp,
                                   double r);

double psi_regular(const MatchingResult& m, const DerivedParams& dp, const RegularizationParams& rp, double r);
cplx psi_irregular(const MatchingResult& m, const DerivedParams& dp, const RegularizationParams& rp, double r);

// Reduce an angle to (-pi, pi].
double reduce_angle(double a);

}  // namespace jscatter
