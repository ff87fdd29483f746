#include "jscatter/model.hpp"

#include <cmath>
#include <sstream>

namespace jscatter {

namespace {

constexpr double kMinMu = 1e-3;
constexpr double kIntegerNuTolerance = 1e-10;

}  // namespace

double PotentialSpec::operator()(double r) const {
  switch (kind) {
    case PotentialKind::none:
      return 0.0;
    case PotentialKind::exponential:
      return V0 * std::exp(-range_a * r);
    case PotentialKind::gaussian:
      return V0 * std::exp(-range_a * r * r);
  }
  return 0.0;
}

double PotentialSpec::cutoff_radius(double threshold) const {
  if (is_zero()) return 0.0;
  const double ratio = std::log(std::fabs(V0) / threshold);
  if (ratio <= 0.0) return 0.0;
  if (kind == PotentialKind::exponential) return ratio / range_a;
  return std::sqrt(ratio / range_a);
}

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::none:
      return "none";
    case PotentialKind::exponential:
      return "exponential";
    case PotentialKind::gaussian:
      return "gaussian";
  }
  return "none";
}

PotentialKind potential_kind_from_string(const std::string& name) {
  if (name == "none") return PotentialKind::none;
  if (name == "exponential") return PotentialKind::exponential;
  if (name == "gaussian") return PotentialKind::gaussian;
  throw ConfigError("unknown potential kind '" + name + "' (expected none, exponential or gaussian)");
}

double energy_from_sigma(double sigma, double lambda) {
  const double k = sigma * lambda;
  return 0.5 * k * k;
}

DerivedParams derive(const PhysicalParams& p, const RegularizationParams& rp, Warnings* warnings) {
  if (p.ell < 0) throw DomainError("ell must be a non-negative integer");
  if (!(p.energy > 0.0) || !std::isfinite(p.energy)) throw DomainError("energy must be positive");
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw DomainError("lambda must be positive");
  if (!(rp.r0 > 0.0) || !std::isfinite(rp.r0)) throw DomainError("r0 must be positive");

  const double lh = p.ell + 0.5;
  const double lh2 = lh * lh;
  if (!(p.A > lh2)) {
    std::ostringstream msg;
    msg << "supercriticality requires A > (ell+1/2)^2 = " << lh2 << ", got A = " << p.A;
    throw SupercriticalityError(msg.str());
  }
  if (!(rp.A0 < lh2)) {
    std::ostringstream msg;
    msg << "subcriticality requires A0 < (ell+1/2)^2 = " << lh2 << ", got A0 = " << rp.A0;
    throw SubcriticalityError(msg.str());
  }

  DerivedParams d;
  d.lambda = p.lambda;
  d.energy = p.energy;
  d.k = std::sqrt(2.0 * p.energy);
  d.sigma = d.k / p.lambda;
  const double s2 = 4.0 * d.sigma * d.sigma;
  d.cos_theta = (s2 - 1.0) / (s2 + 1.0);
  d.sin_theta = 4.0 * d.sigma / (s2 + 1.0);
  d.theta = std::atan2(d.sin_theta, d.cos_theta);
  d.nu = std::sqrt(lh2 - rp.A0);
  d.mu = std::sqrt(p.A - lh2);
  d.zeta = d.mu;

  if (std::fabs(d.nu - std::round(d.nu)) < kIntegerNuTolerance)
    throw DomainError("nu is an integer; J_nu and J_-nu are then dependent (choose a different A0)");
  if (d.mu < kMinMu) throw DomainError("mu below 1e-3; the imaginary-order Hankel evaluation is unreliable");

  if (warnings && p.lambda * rp.r0 >= 1.0) {
    std::ostringstream msg;
    msg << "lambda*r0 = " << p.lambda * rp.r0 << " is not small (the method assumes lambda*r0 << 1)";
    warnings->push_back(msg.str());
  }
  return d;
}

std::optional<double> check_continuity_option(const PhysicalParams& p, const RegularizationParams& rp,
                                              const PotentialSpec& U) {
  const double lh = p.ell + 0.5;
  const double A0 = p.A - 2.0 * rp.r0 * rp.r0 * U(rp.r0);
  if (A0 < lh * lh) return A0;
  return std::nullopt;
}

}  // namespace jscatter
