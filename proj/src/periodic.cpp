#include "airybvp/periodic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "lattice.hpp"

namespace airy {

namespace {

// error measured against the L1 norm so cancelling panels terminate
template <class G>
Complex l1_adaptive(const G& g, double a, double b, int depth) {
  double err = 0.0, l1 = 0.0;
  const Complex r = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 0, 0.0, &err, &l1);
  // boost reports the error on the reference interval [-1, 1]
  if (depth == 0 || 0.5 * (b - a) * err <= 1e-13 * l1 || err < 1e-300) return r;
  const double mid = 0.5 * (a + b);
  return l1_adaptive(g, a, mid, depth - 1) + l1_adaptive(g, mid, b, depth - 1);
}

// int_0^1 e^{-i kappa x} f(x) dx, one panel per half oscillation between breakpoints
Complex closed_form_transform(const InitialDatum& f, double kappa) {
  std::vector<double> knots{0.0};
  knots.insert(knots.end(), f.breakpoints().begin(), f.breakpoints().end());
  knots.push_back(1.0);
  const auto& fn = f.function();
  auto g = [&](double x) {
    const Complex v = fn(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("periodic", "initial datum is not finite at x = " + std::to_string(x));
    return std::polar(1.0, -kappa * x) * v;
  };
  Complex sum{};
  for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
    const double a = knots[p], b = knots[p + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(kappa) * (b - a) / kPi)));
    for (int q = 0; q < panels; ++q) {
      const double lo = a + (b - a) * q / panels;
      const double hi = q + 1 == panels ? b : a + (b - a) * (q + 1) / panels;
      sum += l1_adaptive(g, lo, hi, 12);
    }
  }
  return sum;
}

// Exact transform of the trigonometric interpolant of sampled data.
Complex sampled_transform(const InitialDatum& f, double kappa) {
  const auto& d = f.sample_dft();
  const int M = static_cast<int>(d.size());
  Complex sum{};
  for (int m = -M / 2; m <= M / 2; ++m) {
    const Complex dm = (std::abs(m) == M / 2) ? 0.5 * d[M / 2] : d[(m + M) % M];
    const double delta = kTwoPi * m - kappa;
    sum += std::abs(delta) < 1e-14 ? dm : dm * (std::polar(1.0, delta) - 1.0) / Complex(0.0, delta);
  }
  return sum;
}

}  // namespace

SpectralCoefficients fourier_coeffs(const InitialDatum& f, int N) {
  if (N < 0) throw InputError("periodic", "N must be non-negative");
  std::vector<Complex> c(static_cast<std::size_t>(2 * N + 1));
  if (f.is_sampled()) {
    const auto& s = f.samples();
    const std::size_t M = s.size();
    if (M < static_cast<std::size_t>(2 * N + 2))
      throw AliasingError("periodic", "N = " + std::to_string(N) + " needs at least " + std::to_string(2 * N + 2) +
                                          " samples, got " + std::to_string(M));
    const auto& dft = f.sample_dft();
    for (int n = -N; n <= N; ++n) c[static_cast<std::size_t>(n + N)] = dft[(static_cast<std::size_t>(n + static_cast<int>(M))) % M];
  } else if (f.real_valued()) {
    for (int n = 0; n <= N; ++n) {
      const Complex v = closed_form_transform(f, kTwoPi * n);
      c[static_cast<std::size_t>(N + n)] = v;
      c[static_cast<std::size_t>(N - n)] = std::conj(v);
    }
    c[static_cast<std::size_t>(N)] = c[static_cast<std::size_t>(N)].real();
  } else {
    for (int n = -N; n <= N; ++n) c[static_cast<std::size_t>(n + N)] = closed_form_transform(f, kTwoPi * n);
  }
  return {N, 0.0, std::move(c), f.real_valued(), f.regularity()};
}

SpectralCoefficients fourier_coeffs_shifted(const InitialDatum& f, int N, double shift) {
  if (shift == 0.0) return fourier_coeffs(f, N);
  if (N < 0) throw InputError("periodic", "N must be non-negative");
  std::vector<Complex> c(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const double kappa = kTwoPi * n - shift;
    c[static_cast<std::size_t>(n + N)] = f.is_sampled() ? sampled_transform(f, kappa) : closed_form_transform(f, kappa);
  }
  return {N, shift, std::move(c), false, f.regularity()};
}

SpectralCoefficients evolve(const SpectralCoefficients& c, double t) {
  std::vector<Complex> out;
  detail::timed_coefficients(c, t, out);
  return {c.max_index(), c.shift(), std::move(out), false, c.regularity()};
}

Complex eval_v(const SpectralCoefficients& c, double x, double t) {
  std::vector<Complex> timed, phases;
  detail::timed_coefficients(c, t, timed);
  detail::space_phases(c.max_index(), c.shift(), x, phases);
  return detail::lattice_sum(timed, phases);
}

SpaceTimeField eval_v_field(const SpectralCoefficients& c, const SpaceGrid& grid, std::span<const double> times) {
  SpaceTimeField field(grid, std::vector<double>(times.begin(), times.end()));
  std::vector<std::vector<Complex>> timed(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) detail::timed_coefficients(c, times[m], timed[m]);
  std::vector<Complex> phases;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    detail::space_phases(c.max_index(), c.shift(), grid[i], phases);
    for (std::size_t m = 0; m < times.size(); ++m) field(i, m) = detail::lattice_sum(timed[m], phases);
  }
  return field;
}

namespace {

std::vector<Complex> trace_weights(const SpectralCoefficients& c, int order, TraceMode mode, int endpoint) {
  if (order < 0 || order > 2) throw InputError("periodic", "trace order must be 0, 1 or 2");
  if (endpoint != 0 && endpoint != 1) throw InputError("periodic", "endpoint must be 0 or 1");
  if (order == 2 && mode == TraceMode::Plain && c.regularity() == Regularity::BoundedVariation)
    throw DivergentSeriesError("periodic",
                               "second-derivative trace of a bounded-variation datum diverges; "
                               "enable Cesaro summation");
  const int N = c.max_index();
  std::vector<Complex> w(c.size());
  for (int n = -N; n <= N; ++n) {
    const double kappa = c.wavenumber(n);
    Complex factor = 1.0;
    for (int j = 0; j < order; ++j) factor *= Complex(0.0, kappa);
    if (endpoint == 1) factor *= std::polar(1.0, kappa);
    if (mode == TraceMode::Cesaro) factor *= 1.0 - std::abs(n) / static_cast<double>(N + 1);
    w[static_cast<std::size_t>(n + N)] = factor * c[n];
  }
  return w;
}

}  // namespace

std::vector<Complex> boundary_trace_v(const SpectralCoefficients& c, int order, std::span<const double> times,
                                      TraceMode mode, int endpoint) {
  const auto w = trace_weights(c, order, mode, endpoint);
  const int N = c.max_index();
  std::vector<Complex> out(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) {
    Complex s{};
    for (int n = -N; n <= N; ++n) s += w[static_cast<std::size_t>(n + N)] * detail::time_phase(c.wavenumber(n), times[m]);
    out[m] = s;
  }
  return out;
}

TimeFunction boundary_trace_function(const SpectralCoefficients& c, int order, TraceMode mode, int endpoint) {
  auto w = trace_weights(c, order, mode, endpoint);
  std::vector<double> freq(w.size());
  const int N = c.max_index();
  for (int n = -N; n <= N; ++n) {
    const double k = c.wavenumber(n);
    freq[static_cast<std::size_t>(n + N)] = k * k * k;
  }
  return TimeFunction::exponential_sum(std::move(w), std::move(freq));
}

}  // namespace airy
