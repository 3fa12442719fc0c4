#include "airybvp/correction.hpp"

#include <cmath>

#include "lattice.hpp"

namespace airy {

namespace {

void check_times(std::span<const double> times) {
  double prev = 0.0;
  for (double t : times) {
    if (!(t >= prev)) throw InputError("correction", "times must be ascending and non-negative");
    prev = t;
  }
}

}  // namespace

CoefficientHistory forced_coefficients(int N, double shift, const std::array<std::optional<TimeFunction>, 3>& h,
                                       std::span<const double> times) {
  if (N < 0) throw InputError("correction", "N must be non-negative");
  check_times(times);
  const std::size_t modes = static_cast<std::size_t>(2 * N + 1);
  std::vector<std::vector<Complex>> table(times.size(), std::vector<Complex>(modes));
  for (int n = -N; n <= N; ++n) {
    const double kappa = kTwoPi * n - shift;
    const Complex weight[3] = {-kappa * kappa, Complex(0.0, kappa), 1.0};
    std::vector<Complex> bracket(times.size());
    for (int j = 0; j < 3; ++j) {
      if (!h[j]) continue;
      const auto H = cumulative_moments(*h[j], kappa, times);
      for (std::size_t m = 0; m < times.size(); ++m) bracket[m] += weight[j] * H[m];
    }
    for (std::size_t m = 0; m < times.size(); ++m)
      table[m][static_cast<std::size_t>(n + N)] = detail::time_phase(kappa, times[m]) * bracket[m];
  }
  CoefficientHistory out;
  out.reserve(times.size());
  for (auto& row : table) out.emplace_back(N, shift, std::move(row));
  return out;
}

CoefficientHistory dirichlet_coefficients(const TimeFunction& h1, const TimeFunction& h2, int N,
                                          std::span<const double> times) {
  return forced_coefficients(N, 0.0, {std::nullopt, h1, h2}, times);
}

CoefficientHistory mixed_coefficients(double gamma, const TimeFunction& ux1, const TimeFunction& h2, int N,
                                      std::span<const double> times) {
  if (!std::isfinite(gamma)) throw InputError("correction", "gamma must be finite");
  std::optional<TimeFunction> h1;
  if (gamma != 1.0) h1 = ux1.scaled(gamma - 1.0);
  return forced_coefficients(N, 0.0, {std::nullopt, h1, h2}, times);
}

CoefficientHistory pseudoperiodic_coefficients(const std::array<Complex, 3>& beta, const BoundaryTraces& traces, int N,
                                               std::span<const double> times) {
  std::array<std::optional<TimeFunction>, 3> h;
  for (int j = 0; j < 3; ++j) {
    if (beta[j] == 1.0) continue;
    h[j] = TimeFunction::sampled(traces.dt(), traces.series(0, j)).scaled(1.0 - beta[j]);
  }
  return forced_coefficients(N, 0.0, h, times);
}

CoefficientHistory quasiperiodic_coefficients(double theta, const SpectralCoefficients& v, int N,
                                              std::span<const double> times, TraceMode mode) {
  if (v.shift() != 0.0) throw ContractViolation("correction", "v must live on the periodic lattice");
  if (N < 0) throw InputError("correction", "N must be non-negative");
  check_times(times);
  const double th = reduce_angle(theta);
  const Complex jump = 1.0 - std::polar(1.0, th);
  // traces of v at x = 0 as exponential sums in s
  const TimeFunction tr[3] = {boundary_trace_function(v, 0, mode), boundary_trace_function(v, 1, mode),
                              boundary_trace_function(v, 2, mode)};
  const std::size_t modes = static_cast<std::size_t>(2 * N + 1);
  std::vector<std::vector<Complex>> table(times.size(), std::vector<Complex>(modes));
  for (int n = -N; n <= N; ++n) {
    const double kappa = kTwoPi * n - th;
    std::vector<Complex> acc(times.size());
    if (jump != 0.0) {
      const Complex weight[3] = {kappa * kappa, Complex(0.0, -kappa), -1.0};
      for (int j = 0; j < 3; ++j) {
        const auto H = cumulative_moments(tr[j], kappa, times);
        for (std::size_t m = 0; m < times.size(); ++m) acc[m] += weight[j] * H[m];
      }
    }
    for (std::size_t m = 0; m < times.size(); ++m)
      table[m][static_cast<std::size_t>(n + N)] = jump * detail::time_phase(kappa, times[m]) * acc[m];
  }
  CoefficientHistory out;
  out.reserve(times.size());
  for (auto& row : table) out.emplace_back(N, th, std::move(row));
  return out;
}

CoefficientHistory forced_quasi_coefficients(double theta, const TimeFunction& h1, const TimeFunction& h2, int N,
                                             std::span<const double> times) {
  return forced_coefficients(N, reduce_angle(theta), {std::nullopt, h1, h2}, times);
}

SpaceTimeField synthesize(const CoefficientHistory& coeffs, const SpaceGrid& grid, std::span<const double> times,
                          bool raised_cosine) {
  if (coeffs.size() != times.size()) throw ContractViolation("correction", "one coefficient set per time is required");
  SpaceTimeField field(grid, std::vector<double>(times.begin(), times.end()));
  if (coeffs.empty()) return field;
  const int N = coeffs.front().max_index();
  const double shift = coeffs.front().shift();
  std::vector<std::vector<Complex>> rows(coeffs.size());
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m].max_index() != N || coeffs[m].shift() != shift)
      throw ContractViolation("correction", "coefficient sets disagree on the lattice");
    rows[m].assign(coeffs[m].entries().begin(), coeffs[m].entries().end());
    if (raised_cosine)
      for (int n = -N; n <= N; ++n) rows[m][static_cast<std::size_t>(n + N)] *= 0.5 * (1.0 + std::cos(kPi * n / (N + 1.0)));
  }
  std::vector<Complex> phases;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    detail::space_phases(N, shift, grid[i], phases);
    for (std::size_t m = 0; m < rows.size(); ++m) field(i, m) = detail::lattice_sum(rows[m], phases);
  }
  return field;
}

SpaceTimeField w_dirichlet(const TimeFunction& h1, const TimeFunction& h2, int N, const SpaceGrid& grid,
                           std::span<const double> times) {
  return synthesize(dirichlet_coefficients(h1, h2, N, times), grid, times);
}

SpaceTimeField w_mixed(double gamma, const TimeFunction& ux1, const TimeFunction& h2, int N, const SpaceGrid& grid,
                       std::span<const double> times) {
  return synthesize(mixed_coefficients(gamma, ux1, h2, N, times), grid, times);
}

SpaceTimeField w_pseudoperiodic(const std::array<Complex, 3>& beta, const BoundaryTraces& traces, int N,
                                const SpaceGrid& grid, std::span<const double> times) {
  return synthesize(pseudoperiodic_coefficients(beta, traces, N, times), grid, times);
}

SpaceTimeField w_quasiperiodic(double theta, const SpectralCoefficients& v, int N, const SpaceGrid& grid,
                               std::span<const double> times, TraceMode mode) {
  return synthesize(quasiperiodic_coefficients(theta, v, N, times, mode), grid, times);
}

SpaceTimeField w_forced_quasi(double theta, const TimeFunction& h1, const TimeFunction& h2, int N,
                              const SpaceGrid& grid, std::span<const double> times) {
  return synthesize(forced_quasi_coefficients(theta, h1, h2, N, times), grid, times);
}

SpectralCoefficients quasi_v_coeffs(const InitialDatum& f, int N, double theta) {
  return fourier_coeffs_shifted(f, N, reduce_angle(theta));
}

SpaceTimeField eval_quasi_v_field(const SpectralCoefficients& c, const SpaceGrid& grid, std::span<const double> times) {
  return eval_v_field(c, grid, times);
}

SpaceTimeField compose_u(const SpaceTimeField& v, const SpaceTimeField& w) {
  if (!v.same_layout(w)) throw ContractViolation("correction", "v and w live on different grids");
  std::vector<Complex> sum(v.values().size());
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = v.values()[k] + w.values()[k];
  return {v.grid(), v.times(), std::move(sum)};
}

}  // namespace airy
