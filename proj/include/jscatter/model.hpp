#pragma once

#include <optional>
#include <string>

#include "jscatter/errors.hpp"

namespace jscatter {

struct PhysicalParams {
  int ell = 0;
  double A = 0.0;
  double lambda = 1.0;
  double energy = 0.0;
};

struct RegularizationParams {
  double r0 = 0.0;
  double A0 = 0.0;
};

// Secondary scalars shared by every later stage.
struct DerivedParams {
  double k = 0.0;
  double sigma = 0.0;
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  double theta = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  double zeta = 0.0;
  double lambda = 1.0;
  double energy = 0.0;
};

enum class PotentialKind { none, exponential, gaussian };

struct PotentialSpec {
  PotentialKind kind = PotentialKind::none;
  double V0 = 0.0;
  double range_a = 1.0;

  double operator()(double r) const;
  // Radius beyond which |U| stays below `threshold`.
  double cutoff_radius(double threshold) const;
  bool is_zero() const { return kind == PotentialKind::none || V0 == 0.0; }
};

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

// Energy from sigma = k / lambda.
double energy_from_sigma(double sigma, double lambda);

DerivedParams derive(const PhysicalParams& p, const RegularizationParams& rp, Warnings* warnings = nullptr);

// A0 that makes V continuous at r0, if that A0 is subcritical.
std::optional<double> check_continuity_option(const PhysicalParams& p, const RegularizationParams& rp,
                                              const PotentialSpec& U);

}  // namespace jscatter
