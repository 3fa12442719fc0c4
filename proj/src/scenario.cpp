#include "airybvp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include "airybvp/analysis.hpp"
#include "airybvp/correction.hpp"
#include "airybvp/io.hpp"
#include "airybvp/periodic.hpp"
#include "airybvp/reference.hpp"

namespace airy {

namespace {

std::string class_label(const TimeClass& c) {
  return c.rational ? std::to_string(c.p) + "/" + std::to_string(c.q) : "generic";
}

CoefficientHistory correction_history(const ScenarioConfig& cfg, const SpectralCoefficients& v,
                                      const std::optional<ReferenceSolution>& ref, std::span<const double> times) {
  const int N = cfg.numerics.N;
  const auto& bc = cfg.bc;
  if (bc.get<Periodic>()) {
    CoefficientHistory zero;
    for (std::size_t m = 0; m < times.size(); ++m) zero.push_back(SpectralCoefficients::zeros(N));
    return zero;
  }
  if (auto* q = bc.get<QuasiPeriodic>())
    return quasiperiodic_coefficients(q->theta, v, N, times,
                                      cfg.numerics.cesaro ? TraceMode::Cesaro : TraceMode::Plain);
  const BoundaryTraces& tr = ref->traces;
  auto sampled = [&](std::array<Complex, 3> at0, std::array<Complex, 3> at1) {
    return TimeFunction::sampled(tr.dt(), tr.combination(at0, at1));
  };
  if (bc.get<DirichletType>())
    return dirichlet_coefficients(sampled({0, 1, 0}, {0, 0, 0}), sampled({0, 0, 1}, {0, 0, -1}), N, times);
  if (auto* m = bc.get<MixedDirichlet>())
    return mixed_coefficients(m->gamma, sampled({0, 0, 0}, {0, 1, 0}), sampled({0, 0, 1}, {0, 0, -1}), N, times);
  if (auto* p = bc.get<PseudoPeriodic>()) return pseudoperiodic_coefficients(p->beta, tr, N, times);
  const auto* q = bc.get<QuasiCoupled>();
  const Complex e = std::polar(1.0, q->theta);
  return forced_quasi_coefficients(q->theta, sampled({0, 1, 0}, {0, -e, 0}), sampled({0, 0, 1}, {0, 0, -e}), N,
                                   times);
}

}  // namespace

Summary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto& num = cfg.numerics;
  const InitialDatum f = make_datum(cfg.datum, cfg.base_dir);
  const long steps = std::lround(num.T / num.dt);
  const auto times = uniform_times(num.dt, static_cast<std::size_t>(steps + 1));
  const SpaceGrid grid(num.P);

  const auto* qc = cfg.bc.get<QuasiCoupled>();
  const SpectralCoefficients v = qc ? quasi_v_coeffs(f, num.N, qc->theta) : fourier_coeffs(f, num.N);

  std::optional<ReferenceSolution> ref;
  if (num.reference) {
    ReferenceConfig rc;
    rc.points = num.P;
    rc.degree = num.degree;
    rc.dt = num.dt / num.substeps;
    rc.final_time = num.T;
    rc.output_stride = num.substeps;
    ref = solve_reference(f, cfg.bc, rc);
  }

  const CoefficientHistory wc = correction_history(cfg, v, ref, times);
  const SpaceTimeField vf = eval_v_field(v, grid, times);
  const SpaceTimeField wf = synthesize(wc, grid, times);
  const SpaceTimeField uf = compose_u(vf, wf);

  write_field_csv(out_dir / "field_u.csv", uf);
  write_field_csv(out_dir / "field_v.csv", vf);
  write_field_csv(out_dir / "field_w.csv", wf);

  {
    CsvWriter csv(out_dir / "coefficients.csv", "t,n,kappa,v_re,v_im,w_re,w_im");
    for (std::size_t m = 0; m < times.size(); ++m) {
      const SpectralCoefficients vt = evolve(v, times[m]);
      for (int n = -num.N; n <= num.N; ++n) {
        csv << times[m] << static_cast<long>(n) << v.wavenumber(n) << vt[n].real() << vt[n].imag() << wc[m][n].real()
            << wc[m][n].imag();
        csv.end_row();
      }
    }
  }

  const int decay_hi = cfg.analysis.decay_hi == 0 ? num.N : cfg.analysis.decay_hi;
  std::optional<DecayReport> v_decay, w_decay_final;
  {
    CsvWriter csv(out_dir / "decay_report.csv", "series,t,alpha,intercept,n_lo,n_hi,residual,used,excluded_zeros");
    auto emit = [&](const std::string& series, double t, const DecayReport& r) {
      csv << series << t << r.alpha << r.intercept << static_cast<long>(r.n_lo) << static_cast<long>(r.n_hi)
          << r.residual << static_cast<long>(r.used) << static_cast<long>(r.excluded_zeros);
      csv.end_row();
    };
    try {
      v_decay = decay_exponent(magnitudes_by_index(v), cfg.analysis.decay_lo, decay_hi);
      emit("v", 0.0, *v_decay);
    } catch (const FitError&) {
    }
    for (std::size_t m = 1; m < times.size(); ++m) {
      try {
        const auto r = decay_exponent(magnitudes_by_index(wc[m]), cfg.analysis.decay_lo, decay_hi);
        emit("w", times[m], r);
        if (m + 1 == times.size()) w_decay_final = r;
      } catch (const FitError&) {
      }
    }
  }

  const TimeClass final_class = classify_time(num.T, cfg.analysis.q_max);
  std::vector<Jump> jumps;
  {
    const SpaceGrid jgrid(cfg.analysis.jump_points == 0 ? num.P : cfg.analysis.jump_points);
    const std::vector<double> last{num.T};
    const SpaceTimeField vj = eval_v_field(v, jgrid, last);
    const SpaceTimeField wj = synthesize({wc.back()}, jgrid, last);
    const SpaceTimeField uj = compose_u(vj, wj);
    JumpDetector det;
    det.window = cfg.analysis.jump_window;
    det.factor = cfg.analysis.jump_factor;
    det.floor = cfg.analysis.jump_floor;
    det.merge = cfg.analysis.jump_merge;
    const auto xs = jgrid.points();
    jumps = detect_jumps(uj.slice(0), xs, det);
    CsvWriter csv(out_dir / "jumps.csv", "t,time_class,location,magnitude");
    for (const auto& j : jumps) {
      csv << num.T << class_label(final_class) << j.location << j.magnitude;
      csv.end_row();
    }
  }

  Summary s;
  auto put = [&s](const std::string& k, const std::string& v) { s.emplace_back(k, v); };
  put("family", cfg.bc.name());
  put("wellposed_assumed", cfg.bc.wellposedness_assumed() ? "true" : "false");
  put("datum", cfg.datum.kind);
  put("regularity", to_string(f.regularity()));
  put("N", std::to_string(num.N));
  put("P", std::to_string(num.P));
  put("dt", format_double(num.dt));
  put("T", format_double(num.T));
  put("snapshots", std::to_string(times.size()));
  put("revival_period", format_double(kRevivalPeriod));
  put("T_over_revival", format_double(num.T / kRevivalPeriod));
  put("time_class", class_label(final_class));
  put("max_abs_u", format_double(uf.max_abs()));
  put("max_abs_v", format_double(vf.max_abs()));
  put("max_abs_w", format_double(wf.max_abs()));
  put("reference", num.reference ? "true" : "false");
  if (ref) {
    put("reference_degree", std::to_string(num.degree));
    put("reference_dt", format_double(num.dt / num.substeps));
    put("decomposition_error", format_double(max_abs_difference(ref->field, uf)));
    double interior = 0.0;
    for (std::size_t m = 0; m < uf.steps(); ++m)
      for (std::size_t i = 0; i < uf.points(); ++i)
        if (grid[i] >= 0.1 && grid[i] <= 0.9) interior = std::max(interior, std::abs(ref->field(i, m) - uf(i, m)));
    put("decomposition_error_interior", format_double(interior));
  }
  put("decay_alpha_v", v_decay ? format_double(v_decay->alpha) : "nan");
  put("decay_alpha_w", w_decay_final ? format_double(w_decay_final->alpha) : "nan");
  double max_jump = 0.0;
  for (const auto& j : jumps) max_jump = std::max(max_jump, j.magnitude);
  put("jumps", std::to_string(jumps.size()));
  put("max_jump", format_double(max_jump));

  std::ofstream out(out_dir / "summary.txt");
  for (const auto& [k, v] : s) out << k << ": " << v << '\n';
  return s;
}

Summary run_scenario_file(const std::filesystem::path& config, const std::filesystem::path& out_dir) {
  ScenarioConfig cfg = parse_scenario(IniDocument::load(config));
  cfg.base_dir = config.parent_path();
  return run_scenario(cfg, out_dir);
}

void list_scenarios(std::ostream& out) {
  out << "boundary families (bc.family in [problem]):\n";
  for (const auto& e : family_catalog()) {
    out << "  " << e.family << ": " << e.description << '\n';
    for (const auto& [k, v] : e.keys) out << "      " << k << " (e.g. " << v << ")\n";
  }
  out << "  any family: bc.wellposed = true|false\n";
  out << "datum kinds (datum.kind in [datum]):\n";
  out << "  fourier_mode: e^{2 pi i m x}; datum.mode\n";
  out << "  step: indicator of [lo, hi); datum.lo, datum.hi\n";
  out << "  bump: smooth compact bump; datum.center, datum.width (half-width)\n";
  out << "  poly: x^2 (1 - x)^2\n";
  out << "  samples_file: 2^m samples f(j/M), one 're [im]' per line; datum.path, datum.regularity\n";
  out << "numerics: numerics.N numerics.P numerics.dt numerics.T numerics.degree numerics.substeps "
         "numerics.reference numerics.cesaro\n";
  out << "analysis: analysis.q_max analysis.decay_lo analysis.decay_hi analysis.jump_points analysis.jump_window "
         "analysis.jump_factor analysis.jump_floor analysis.jump_merge\n";
  out << "revival period T_rev = 1/(4 pi^2) = " << format_double(kRevivalPeriod)
      << " (e^{i (2 pi n)^3 t} = 1 for all n at t = T_rev)\n";
}

}  // namespace airy
