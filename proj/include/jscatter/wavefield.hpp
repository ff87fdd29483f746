#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jscatter/coefficients.hpp"
#include "jscatter/reference.hpp"

namespace jscatter {

enum class WaveLabel { psi_reg, psi_irr_real_part, psi_sin, psi_cos };
enum class Region { full, near_origin, outer };

std::string to_string(WaveLabel label);
std::string to_string(Region region);

struct WaveSamples {
  std::vector<double> r;
  std::vector<double> value;
  WaveLabel label = WaveLabel::psi_reg;
};

// Matching, inner sine/cosine and outer tables for one (E, N).
struct CoefficientTables {
  MatchingResult matching;
  InnerCoefficients inner_sine;
  InnerCoefficients inner_cosine;
  OuterCoefficients outer;
  double eta = 0.0;
};

CoefficientTables build_tables(const DerivedParams& dp, const RegularizationParams& rp, int N,
                               Warnings* warnings = nullptr, const RecursionOptions& opt = {});

// 2000 log-spaced points on [1e-4, 30]/lambda merged with 400 linear points on
// (0, r0].
std::vector<double> default_grid(double lambda, double r0, int log_points = 2000, int linear_points = 400);

WaveSamples reconstruct(SeriesKind kind, const CoefficientTables& tables, const BasisSet& bs,
                        const std::vector<double>& grid);

// psi_reg (regular) or Re psi_irr (irregular) on the grid.
WaveSamples reference_samples(Which which, const MatchingResult& m, const DerivedParams& dp,
                              const RegularizationParams& rp, const std::vector<double>& grid);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

// Max |a - b| over the region (near_origin = (0, r0], outer = (r0, r_max]),
// optionally intersected with a window [lo, hi].
double compare(const WaveSamples& a, const WaveSamples& b, Region region, double r0,
               std::optional<Window> window = std::nullopt);

struct ConvergenceReport {
  std::vector<int> N_values;
  std::vector<double> max_error;
  Region region = Region::full;
  bool monotone_decreasing = false;
};

ConvergenceReport convergence_study(SeriesKind kind, const DerivedParams& dp, const RegularizationParams& rp,
                                    const std::vector<int>& N_list, Region region, const std::vector<double>& grid,
                                    std::optional<Window> window = std::nullopt, Warnings* warnings = nullptr);

}  // namespace jscatter
