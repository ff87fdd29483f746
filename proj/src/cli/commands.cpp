#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <numbers>
#include <ostream>
#include <thread>

#include "jscatter/cli.hpp"
#include "jscatter/oracle.hpp"
#include "jscatter/scattering.hpp"

namespace jscatter::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Work items run on a small pool; results and per-item warnings come back in
// index order so the output never depends on scheduling.
template <class R>
std::vector<R> parallel_map(size_t n, int jobs, const std::function<R(size_t, Warnings&)>& fn, Warnings& warnings) {
  std::vector<R> out(n);
  std::vector<Warnings> local(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i, local[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t threads = std::min<size_t>(n, static_cast<size_t>(std::max(1, jobs)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (size_t i = 0; i < n; ++i) warnings.insert(warnings.end(), local[i].begin(), local[i].end());
  for (size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return out;
}

struct Context {
  RunConfig cfg;
  std::vector<DerivedParams> points;
  fs::path dir;
  int jobs = 1;
  Manifest manifest;
  std::string stage = "config";

  PhysicalParams physical_at(size_t i) const {
    PhysicalParams p = cfg.physical;
    p.energy = points[i].energy;
    return p;
  }

  void emit(const CsvWriter& csv, const std::string& name) {
    csv.write((dir / name).string());
    manifest.outputs.push_back(name);
  }
};

std::string suffix(size_t i) { return "_s" + std::to_string(i); }

// --- validate ------------------------------------------------------------------

int cmd_validate(Context& ctx) {
  CsvWriter csv({"sigma", "E", "k", "nu", "mu", "cos_theta", "sin_theta"}, ctx.cfg.precision);
  for (const auto& dp : ctx.points)
    csv.cell(dp.sigma).cell(dp.energy).cell(dp.k).cell(dp.nu).cell(dp.mu).cell(dp.cos_theta).cell(dp.sin_theta).end_row();
  ctx.emit(csv, "derived.csv");
  return ok;
}

// --- reference -----------------------------------------------------------------

int cmd_reference(Context& ctx) {
  ctx.stage = "reference";
  const auto& rp = ctx.cfg.regularization;
  const std::vector<double> grid = default_grid(ctx.cfg.physical.lambda, rp.r0);
  const auto results = parallel_map<MatchingResult>(
      ctx.points.size(), ctx.jobs, [&](size_t i, Warnings&) { return solve_matching(ctx.points[i], rp); },
      ctx.manifest.warnings);

  CsvWriter table({"sigma", "E", "G_phase", "re_B_plus", "im_B_plus", "re_B_minus", "im_B_minus", "inner_amplitude",
                   "abs_exp_iG", "cond_regular", "cond_irregular", "literal_G_difference"},
                  ctx.cfg.precision);
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& m = results[i];
    const auto& dp = ctx.points[i];
    table.cell(dp.sigma).cell(dp.energy).cell(m.G_phase).cell(m.B_plus.real()).cell(m.B_plus.imag());
    table.cell(m.B_minus.real()).cell(m.B_minus.imag()).cell(m.inner_amplitude).cell(std::abs(m.exp_plus_iG_check));
    table.cell(m.condition_regular).cell(m.condition_irregular).cell(m.literal.G_difference).end_row();

    CsvWriter curves({"r", "psi_reg", "re_psi_irr", "im_psi_irr"}, ctx.cfg.precision);
    for (double r : grid) {
      const cplx irr = psi_irregular(m, dp, rp, r);
      curves.cell(r).cell(psi_regular(m, dp, rp, r)).cell(irr.real()).cell(irr.imag()).end_row();
    }
    ctx.emit(curves, "reference_curves" + suffix(i) + ".csv");
  }
  ctx.emit(table, "reference.csv");
  return ok;
}

// --- wavefunction --------------------------------------------------------------

int cmd_wavefunction(Context& ctx) {
  ctx.stage = "wavefield";
  const auto& rp = ctx.cfg.regularization;
  const int N = ctx.cfg.N;
  const std::vector<double> grid = default_grid(ctx.cfg.physical.lambda, rp.r0);
  struct Out {
    CoefficientTables tables;
    WaveSamples sine, cosine, reg, irr;
  };
  const auto outs = parallel_map<Out>(
      ctx.points.size(), ctx.jobs,
      [&](size_t i, Warnings& w) {
        const auto& dp = ctx.points[i];
        Out o;
        o.tables = build_tables(dp, rp, N, &w);
        const BasisSet bs = make_basis(dp, rp, N);
        o.sine = reconstruct(SeriesKind::sine, o.tables, bs, grid);
        o.cosine = reconstruct(SeriesKind::cosine, o.tables, bs, grid);
        o.reg = reference_samples(Which::regular, o.tables.matching, dp, rp, grid);
        o.irr = reference_samples(Which::irregular, o.tables.matching, dp, rp, grid);
        return o;
      },
      ctx.manifest.warnings);

  const std::string tag = "_N" + std::to_string(N);
  nlohmann::json summary = nlohmann::json::array();
  for (size_t i = 0; i < outs.size(); ++i) {
    const Out& o = outs[i];
    for (const bool sine : {true, false}) {
      const WaveSamples& ref = sine ? o.reg : o.irr;
      const WaveSamples& jm = sine ? o.sine : o.cosine;
      CsvWriter curve({"r", "psi_reference", "psi_jmatrix", "abs_error"}, ctx.cfg.precision);
      for (size_t j = 0; j < grid.size(); ++j)
        curve.cell(grid[j]).cell(ref.value[j]).cell(jm.value[j]).cell(std::fabs(ref.value[j] - jm.value[j])).end_row();
      const std::string kind = sine ? "sine" : "cosine";
      ctx.emit(curve, "wavefunction_" + kind + tag + suffix(i) + ".csv");

      const auto& inner = sine ? o.tables.inner_sine.P : o.tables.inner_cosine.P;
      const auto& outer = sine ? o.tables.outer.S : o.tables.outer.C;
      CsvWriter coeff({"n", "inner", "outer"}, ctx.cfg.precision);
      for (int n = 0; n < N; ++n) coeff.cell(n).cell(inner.at(n)).cell(outer.at(n)).end_row();
      ctx.emit(coeff, "coefficients_" + kind + tag + suffix(i) + ".csv");
    }
    summary.push_back({{"sigma", ctx.points[i].sigma},
                       {"eta", o.tables.eta},
                       {"sine_max_error", compare(o.reg, o.sine, Region::full, rp.r0)},
                       {"cosine_outer_max_error", compare(o.irr, o.cosine, Region::outer, rp.r0)}});
  }
  ctx.manifest.summary["points"] = summary;
  return ok;
}

// --- convergence ---------------------------------------------------------------

int cmd_convergence(Context& ctx) {
  ctx.stage = "wavefield";
  const auto& rp = ctx.cfg.regularization;
  const auto& Ns = ctx.cfg.convergence.N_values;
  const auto window = ctx.cfg.convergence.window;
  const std::vector<double> grid = default_grid(ctx.cfg.physical.lambda, rp.r0);
  const std::array<Region, 3> regions{Region::full, Region::near_origin, Region::outer};

  // errors[point * Ns + k][kind * 3 + region]
  const size_t jobs_n = ctx.points.size() * Ns.size();
  const auto errors = parallel_map<std::array<double, 6>>(
      jobs_n, ctx.jobs,
      [&](size_t job, Warnings& w) {
        const auto& dp = ctx.points[job / Ns.size()];
        const int N = Ns[job % Ns.size()];
        const CoefficientTables t = build_tables(dp, rp, N, &w);
        const BasisSet bs = make_basis(dp, rp, N);
        const WaveSamples reg = reference_samples(Which::regular, t.matching, dp, rp, grid);
        const WaveSamples irr = reference_samples(Which::irregular, t.matching, dp, rp, grid);
        const WaveSamples s = reconstruct(SeriesKind::sine, t, bs, grid);
        const WaveSamples c = reconstruct(SeriesKind::cosine, t, bs, grid);
        std::array<double, 6> e{};
        for (size_t r = 0; r < 3; ++r) {
          e[r] = compare(reg, s, regions[r], rp.r0, window);
          e[3 + r] = compare(irr, c, regions[r], rp.r0, window);
        }
        return e;
      },
      ctx.manifest.warnings);

  CsvWriter csv({"sigma", "kind", "region", "N", "max_error", "monotone_decreasing"}, ctx.cfg.precision);
  for (size_t p = 0; p < ctx.points.size(); ++p) {
    for (int kind = 0; kind < 2; ++kind) {
      for (size_t r = 0; r < 3; ++r) {
        bool mono = true;
        for (size_t k = 1; k < Ns.size(); ++k)
          mono = mono && errors[p * Ns.size() + k][kind * 3 + r] < errors[p * Ns.size() + k - 1][kind * 3 + r];
        for (size_t k = 0; k < Ns.size(); ++k) {
          csv.cell(ctx.points[p].sigma).cell(std::string(kind == 0 ? "sine" : "cosine")).cell(to_string(regions[r]));
          csv.cell(Ns[k]).cell(errors[p * Ns.size() + k][kind * 3 + r]).cell(mono).end_row();
        }
      }
    }
  }
  ctx.emit(csv, "convergence.csv");
  return ok;
}

// --- smatrix -------------------------------------------------------------------

int cmd_smatrix(Context& ctx) {
  ctx.stage = "scattering";
  const auto& rp = ctx.cfg.regularization;
  const auto results = parallel_map<SMatrixResult>(
      ctx.points.size(), ctx.jobs,
      [&](size_t i, Warnings& w) { return s_matrix(ctx.physical_at(i), rp, ctx.cfg.potential, ctx.cfg.N, {}, &w); },
      ctx.manifest.warnings);

  std::vector<double> delta;
  for (const auto& r : results) delta.push_back(r.delta);
  const std::vector<double> unwrapped = unwrap_half_angles(delta);
  CsvWriter csv({"sigma", "E", "re_S", "im_S", "abs_S", "delta", "delta_unwrapped", "G_phase", "N", "cond_estimate"},
                ctx.cfg.precision);
  double worst = 0.0;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    csv.cell(ctx.points[i].sigma).cell(ctx.points[i].energy).cell(r.S.real()).cell(r.S.imag()).cell(std::abs(r.S));
    csv.cell(r.delta).cell(unwrapped[i]).cell(r.G_phase).cell(r.N_used).cell(r.green.cond_estimate).end_row();
    worst = std::max(worst, std::fabs(std::abs(r.S) - 1.0));
  }
  ctx.emit(csv, "smatrix.csv");
  ctx.manifest.summary["max_unitarity_defect"] = worst;
  return ok;
}

// --- oracle-check --------------------------------------------------------------

struct Row {
  std::string case_id;
  double primary = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
};

Row make_row(std::string id, double primary, double oracle, double abs_diff, double tol) {
  return {std::move(id), primary, oracle, abs_diff, tol};
}

std::vector<Row> oracle_rows(const Context& ctx, size_t i, Warnings& w) {
  const auto& dp = ctx.points[i];
  const auto& rp = ctx.cfg.regularization;
  const PhysicalParams p = ctx.physical_at(i);
  const PotentialSpec none{};
  const std::string at = "@sigma=" + format_number(dp.sigma, 6);
  std::vector<Row> rows;

  const MatchingResult m = solve_matching(dp, rp);
  const oracle::PhaseOracle ref = oracle::numerov_phase(p, rp, none);
  rows.push_back(make_row("G_phase" + at, m.G_phase, ref.extracted.G_phase,
                          std::fabs(reduce_angle(m.G_phase - ref.extracted.G_phase)), 1e-6));
  rows.push_back(make_row("abs_exp_iG" + at, std::abs(m.exp_plus_iG_check), 1.0,
                          std::fabs(std::abs(m.exp_plus_iG_check) - 1.0), 1e-10));
  rows.push_back(make_row("numerov_abs_S" + at, std::abs(ref.extracted.S), 1.0,
                          std::fabs(std::abs(ref.extracted.S) - 1.0), 1e-7));

  // Reference wave against the integrated one: the ratio must be constant.
  {
    const double rmax = 20.0 / dp.lambda;
    const WaveSamples w_num = oracle::numerov_solve(p, rp, none, 1e-5 / p.lambda, rmax, 400'000);
    double worst = 0.0, ratio0 = 0.0;
    for (int j = 0; j <= 200; ++j) {
      const double r = 0.05 * rmax + (0.95 * rmax) * j / 200.0;
      const double a = psi_regular(m, dp, rp, r);
      if (std::fabs(a) < 0.1) continue;
      const double ratio = oracle::sample_at(w_num, r) / a;
      if (ratio0 == 0.0) ratio0 = ratio;
      worst = std::max(worst, std::fabs(ratio / ratio0 - 1.0));
    }
    rows.push_back(make_row("psi_reg_ratio_spread" + at, worst, 0.0, worst, 1e-6));
  }

  // Outer coefficients against the extended-precision recursion.
  {
    const int n = 50;
    const OuterCoefficients outer = run_five_term(dp, five_term_initials(dp, m.G_phase), n + 1, {}, &w);
    const auto fp = oracle::extended_five_term(dp, m.G_phase, n + 1, +1);
    const auto fm = oracle::extended_five_term(dp, m.G_phase, n + 1, -1);
    const cplx T = outer.F_plus[n] / outer.F_minus[n];
    const cplx T_ext = fp[n] / fm[n];
    rows.push_back(make_row("T_50" + at, std::arg(T), std::arg(T_ext), std::abs(T - T_ext), 1e-8));
  }

  // Inner sine coefficients against the extended-precision recursion.
  {
    const int n = 200;
    const InnerCoefficients c = run_three_term(SeriesKind::sine, dp, 0.0, n);
    const auto ext = oracle::extended_three_term(dp, false, 0.0, n);
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::fabs(c.P[j] - ext[j]));
      scale = std::max(scale, std::fabs(ext[j]));
    }
    rows.push_back(make_row("inner_sine_P" + at, c.P[n - 1], ext[n - 1], worst / scale, 1e-10));
  }

  // S-matrix: unitarity always; the phase difference when U is present.
  const SMatrixResult s0 = s_matrix(p, rp, none, ctx.cfg.N, {}, &w);
  rows.push_back(make_row("abs_S" + at, std::abs(s0.S), 1.0, std::fabs(std::abs(s0.S) - 1.0), 1e-6));
  if (!ctx.cfg.potential.is_zero()) {
    const SMatrixResult sU = s_matrix(p, rp, ctx.cfg.potential, ctx.cfg.N, {}, &w);
    const oracle::PhaseOracle num = oracle::numerov_phase(p, rp, ctx.cfg.potential);
    const double dd = reduce_half_angle(sU.delta - s0.delta);
    const double dd_oracle = reduce_half_angle(num.delta - ref.delta);
    rows.push_back(make_row("abs_S_U" + at, std::abs(sU.S), 1.0, std::fabs(std::abs(sU.S) - 1.0), 1e-6));
    rows.push_back(make_row("delta_difference" + at, dd, dd_oracle, std::fabs(reduce_half_angle(dd - dd_oracle)), 2e-3));
  }
  return rows;
}

int cmd_oracle_check(Context& ctx) {
  ctx.stage = "oracle";
  const auto per_point = parallel_map<std::vector<Row>>(
      ctx.points.size(), ctx.jobs, [&](size_t i, Warnings& w) { return oracle_rows(ctx, i, w); },
      ctx.manifest.warnings);
  CsvWriter csv({"case_id", "primary", "oracle", "abs_diff", "rel_diff", "tolerance", "pass"}, ctx.cfg.precision);
  int failed = 0, total = 0;
  for (const auto& rows : per_point) {
    for (const Row& r : rows) {
      const bool pass = r.abs_diff <= r.tolerance;
      const double rel = r.oracle != 0.0 ? r.abs_diff / std::fabs(r.oracle) : r.abs_diff;
      csv.cell(r.case_id).cell(r.primary).cell(r.oracle).cell(r.abs_diff).cell(rel).cell(r.tolerance).cell(pass).end_row();
      failed += !pass;
      ++total;
    }
  }
  ctx.emit(csv, "oracle_check.csv");
  ctx.manifest.summary["cases"] = total;
  ctx.manifest.summary["failed"] = failed;
  return failed ? acceptance_failure : ok;
}

using Command = int (*)(Context&);

const std::vector<std::pair<std::string, Command>>& registry() {
  static const std::vector<std::pair<std::string, Command>> r{
      {"validate", cmd_validate},       {"reference", cmd_reference}, {"wavefunction", cmd_wavefunction},
      {"convergence", cmd_convergence}, {"smatrix", cmd_smatrix},     {"oracle-check", cmd_oracle_check}};
  return r;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

int run(const std::string& command, const std::string& config_path, const RunOptions& opt, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto it = std::find_if(registry().begin(), registry().end(), [&](const auto& e) { return e.first == command; });
  if (it == registry().end()) {
    log << "jscatter: unknown command '" << command << "'\n";
    return config_error;
  }

  Context ctx;
  ctx.manifest.command = command;
  ctx.jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());

  int code = ok;
  bool have_dir = false;
  try {
    ctx.cfg = load_config(config_path);
    ctx.manifest.config = ctx.cfg.raw;
    ctx.dir = opt.out_dir ? fs::path(*opt.out_dir) : fs::path(ctx.cfg.directory);
    std::error_code ec;
    fs::create_directories(ctx.dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + ctx.dir.string() + "': " + ec.message());
    have_dir = true;
    ctx.stage = "model";
    ctx.points = validate(ctx.cfg, &ctx.manifest.warnings);
  } catch (const Error& e) {
    ctx.manifest.status = "config_error";
    ctx.manifest.error_kind = e.kind();
    ctx.manifest.error_message = e.what();
    ctx.manifest.error_stage = ctx.stage;
    log << "jscatter: " << e.kind() << ": " << e.what() << '\n';
    code = config_error;
  }

  if (code == ok) {
    try {
      code = it->second(ctx);
      if (code == acceptance_failure) ctx.manifest.status = "acceptance_failure";
    } catch (const Error& e) {
      ctx.manifest.status = "numerical_failure";
      ctx.manifest.error_kind = e.kind();
      ctx.manifest.error_message = e.what();
      ctx.manifest.error_stage = ctx.stage;
      log << "jscatter: " << e.kind() << " in " << ctx.stage << ": " << e.what() << '\n';
      code = numerical_failure;
    } catch (const std::exception& e) {
      ctx.manifest.status = "numerical_failure";
      ctx.manifest.error_kind = "std::exception";
      ctx.manifest.error_message = e.what();
      ctx.manifest.error_stage = ctx.stage;
      log << "jscatter: " << e.what() << '\n';
      code = numerical_failure;
    }
  }

  for (const auto& w : ctx.manifest.warnings) log << "warning: " << w << '\n';
  ctx.manifest.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (have_dir) {
    try {
      write_manifest(ctx.manifest, (ctx.dir / "manifest.json").string());
    } catch (const Error& e) {
      log << "jscatter: " << e.what() << '\n';
      if (code == ok) code = numerical_failure;
    }
  }
  return code;
}

}  // namespace jscatter::cli
