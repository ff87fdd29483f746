#include "jscatter/wavefield.hpp"

#include <algorithm>
#include <cmath>

namespace jscatter {

std::string to_string(WaveLabel label) {
  switch (label) {
    case WaveLabel::psi_reg:
      return "psi_reg";
    case WaveLabel::psi_irr_real_part:
      return "psi_irr_real_part";
    case WaveLabel::psi_sin:
      return "psi_sin";
    case WaveLabel::psi_cos:
      return "psi_cos";
  }
  return "psi_reg";
}

std::string to_string(Region region) {
  switch (region) {
    case Region::full:
      return "full";
    case Region::near_origin:
      return "near_origin";
    case Region::outer:
      return "outer";
  }
  return "full";
}

CoefficientTables build_tables(const DerivedParams& dp, const RegularizationParams& rp, int N, Warnings* warnings,
                               const RecursionOptions& opt) {
  CoefficientTables t;
  t.matching = solve_matching(dp, rp);
  const double amp = t.matching.inner_amplitude;
  t.inner_sine = run_three_term(SeriesKind::sine, dp, 0.0, N, amp);
  t.outer = run_five_term(dp, five_term_initials(dp, t.matching.G_phase), N, opt, warnings);
  const BasisSet bs = make_basis(dp, rp, N);
  t.eta = eta_match(dp, bs, t.outer, amp);
  t.inner_cosine = run_three_term(SeriesKind::cosine, dp, t.eta, N, amp);
  return t;
}

std::vector<double> default_grid(double lambda, double r0, int log_points, int linear_points) {
  std::vector<double> g;
  g.reserve(log_points + linear_points);
  const double lo = std::log(1e-4 / lambda);
  const double hi = std::log(30.0 / lambda);
  for (int i = 0; i < log_points; ++i) {
    const double t = log_points == 1 ? 0.0 : static_cast<double>(i) / (log_points - 1);
    g.push_back(std::exp(lo + t * (hi - lo)));
  }
  for (int i = 1; i <= linear_points; ++i) g.push_back(r0 * i / linear_points);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

WaveSamples reconstruct(SeriesKind kind, const CoefficientTables& tables, const BasisSet& bs,
                        const std::vector<double>& grid) {
  const auto& inner = kind == SeriesKind::sine ? tables.inner_sine.P : tables.inner_cosine.P;
  const auto& outer = kind == SeriesKind::sine ? tables.outer.S : tables.outer.C;
  const int n_in = std::min<int>(bs.N, static_cast<int>(inner.size()));
  const int n_out = std::min<int>(bs.N, static_cast<int>(outer.size()));
  const std::vector<double> cin(inner.begin(), inner.begin() + n_in);
  const std::vector<double> cout(outer.begin(), outer.begin() + n_out);
  WaveSamples w;
  w.label = kind == SeriesKind::sine ? WaveLabel::psi_sin : WaveLabel::psi_cos;
  w.r = grid;
  w.value.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    w.value[i] = r <= bs.r0 ? basis_sum(BasisKind::inner, cin, r, bs) : basis_sum(BasisKind::outer, cout, r, bs);
  }
  return w;
}

WaveSamples reference_samples(Which which, const MatchingResult& m, const DerivedParams& dp,
                              const RegularizationParams& rp, const std::vector<double>& grid) {
  WaveSamples w;
  w.label = which == Which::regular ? WaveLabel::psi_reg : WaveLabel::psi_irr_real_part;
  w.r = grid;
  w.value.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    w.value[i] = which == Which::regular ? psi_regular(m, dp, rp, grid[i]) : psi_irregular(m, dp, rp, grid[i]).real();
  }
  return w;
}

double compare(const WaveSamples& a, const WaveSamples& b, Region region, double r0, std::optional<Window> window) {
  if (a.r.size() != b.r.size() || a.value.size() != a.r.size() || b.value.size() != b.r.size())
    throw GridMismatchError("compare: sample arrays differ in length");
  double worst = 0.0;
  for (size_t i = 0; i < a.r.size(); ++i) {
    if (a.r[i] != b.r[i]) throw GridMismatchError("compare: grids differ");
    const double r = a.r[i];
    if (region == Region::near_origin && r > r0) continue;
    if (region == Region::outer && r <= r0) continue;
    if (window && (r < window->lo || r > window->hi)) continue;
    worst = std::max(worst, std::fabs(a.value[i] - b.value[i]));
  }
  return worst;
}

ConvergenceReport convergence_study(SeriesKind kind, const DerivedParams& dp, const RegularizationParams& rp,
                                    const std::vector<int>& N_list, Region region, const std::vector<double>& grid,
                                    std::optional<Window> window, Warnings* warnings) {
  for (size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) throw DomainError("convergence_study: N_list must be increasing");
  ConvergenceReport rep;
  rep.region = region;
  const MatchingResult m = solve_matching(dp, rp);
  const WaveSamples ref = reference_samples(kind == SeriesKind::sine ? Which::regular : Which::irregular, m, dp, rp, grid);
  for (int N : N_list) {
    const CoefficientTables t = build_tables(dp, rp, N, warnings);
    const WaveSamples js = reconstruct(kind, t, make_basis(dp, rp, N), grid);
    rep.N_values.push_back(N);
    rep.max_error.push_back(compare(js, ref, region, rp.r0, window));
  }
  rep.monotone_decreasing = true;
  for (size_t i = 1; i < rep.max_error.size(); ++i)
    if (!(rep.max_error[i] < rep.max_error[i - 1])) rep.monotone_decreasing = false;
  return rep;
}

}  // namespace jscatter
