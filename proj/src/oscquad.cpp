#include "airybvp/oscquad.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace airy {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Cubic through four equally spaced nodes at local coordinates xi0, xi0+2, xi0+4, xi0+6.
std::array<Complex, 4> local_cubic(double xi0, const Complex* v) {
  // Newton divided differences, then expansion to monomials in xi
  const double h = 2.0;
  const Complex d1 = (v[1] - v[0]) / h, d2 = (v[2] - v[1]) / h, d3 = (v[3] - v[2]) / h;
  const Complex e1 = (d2 - d1) / (2.0 * h), e2 = (d3 - d2) / (2.0 * h);
  const Complex f1 = (e2 - e1) / (3.0 * h);
  const double x0 = xi0, x1 = xi0 + h, x2 = xi0 + 2 * h;
  // p = v0 + d1 (x-x0) + e1 (x-x0)(x-x1) + f1 (x-x0)(x-x1)(x-x2)
  std::array<Complex, 4> a{};
  a[0] = v[0] - d1 * x0 + e1 * (x0 * x1) - f1 * (x0 * x1 * x2);
  a[1] = d1 - e1 * (x0 + x1) + f1 * (x0 * x1 + x0 * x2 + x1 * x2);
  a[2] = e1 - f1 * (x0 + x1 + x2);
  a[3] = f1;
  return a;
}

// int over s in [c - r, c + r] of e^{-i omega s} sum_m a_m eta^m, eta = (s - c)/r
template <std::size_t D>
Complex polynomial_panel(const std::array<Complex, D>& a, double c, double r, double omega) {
  static_assert(D <= 7);
  const auto mu = monomial_moments(omega * r);
  Complex sum{};
  for (std::size_t m = 0; m < D; ++m) sum += a[m] * mu[m];
  return r * std::polar(1.0, -omega * c) * sum;
}

// Coefficients of p(c + r eta) given coefficients of p(xi).
std::array<Complex, 4> recenter(const std::array<Complex, 4>& a, double c, double r) {
  std::array<Complex, 4> b{};
  static constexpr double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  for (int m = 0; m < 4; ++m) {
    for (int j = 0; j <= m; ++j)
      b[j] += a[m] * binom[m][j] * std::pow(c, m - j) * std::pow(r, j);
  }
  return b;
}

Complex sampled_integral(const TimeFunction& h, double omega, double a, double b) {
  const double dt = h.dt();
  const auto& cubics = h.cubics();
  const std::size_t intervals = cubics.size();
  std::size_t first = static_cast<std::size_t>(std::max(0.0, std::floor(a / dt)));
  first = std::min(first, intervals - 1);
  Complex sum{};
  for (std::size_t i = first; i < intervals; ++i) {
    const double s0 = dt * static_cast<double>(i);
    const double s1 = dt * static_cast<double>(i + 1);
    if (s0 >= b) break;
    const double lo = std::max(a, s0), hi = std::min(b, s1);
    if (hi <= lo) continue;
    const double r = 0.5 * dt;
    const double mid = s0 + r;
    if (lo == s0 && hi == s1) {
      sum += polynomial_panel(cubics[i], mid, r, omega);
    } else {
      const double xlo = (lo - mid) / r, xhi = (hi - mid) / r;
      const double xc = 0.5 * (xlo + xhi), xr = 0.5 * (xhi - xlo);
      sum += polynomial_panel(recenter(cubics[i], xc, xr), mid + r * xc, r * xr, omega);
    }
  }
  return sum;
}

Complex exponential_sum_integral(const TimeFunction& h, double omega, double a, double b) {
  const double len = b - a, center = 0.5 * (a + b);
  Complex sum{};
  const auto& amp = h.amplitudes();
  const auto& freq = h.frequencies();
  for (std::size_t m = 0; m < amp.size(); ++m) {
    const double delta = freq[m] - omega;
    const double x = 0.5 * delta * len;
    const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 + x * x * x * x / 120.0 : std::sin(x) / x;
    sum += amp[m] * std::polar(len * sinc, delta * center);
  }
  return sum;
}

Complex checked(const std::function<Complex(double)>& h, double s) {
  const Complex v = h(s);
  if (!finite(v)) throw InputError("oscquad", "h is not finite at s = " + std::to_string(s));
  return v;
}

Complex gauss_integral(const std::function<Complex(double)>& h, double omega, double a, double b) {
  auto g = [&](double s) { return std::polar(1.0, -omega * s) * checked(h, s); };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, a, b, 12, 1e-12, &err);
}

// Degree-6 Filon on panels refined until the Chebyshev–Lobatto interpolant of h
// matches h at the interleaved points.
Complex filon_integral(const std::function<Complex(double)>& h, double omega, double a, double b) {
  static const auto nodes = [] {
    std::array<double, 7> x{};
    for (int j = 0; j < 7; ++j) x[j] = std::cos(kPi * j / 6.0);
    return x;
  }();
  static const auto checks = [] {
    std::array<double, 6> x{};
    for (int j = 0; j < 6; ++j) x[j] = std::cos(kPi * (j + 0.5) / 6.0);
    return x;
  }();

  double scale = 0.0;
  for (int j = 0; j <= 64; ++j) scale = std::max(scale, std::abs(checked(h, a + (b - a) * j / 64.0)));
  if (scale == 0.0) return {};
  const double tol = 1e-13 * scale;

  struct Panel {
    double lo, hi;
    int depth;
  };
  std::vector<Panel> stack{{a, b, 0}};
  Complex sum{};
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double c = 0.5 * (p.lo + p.hi), r = 0.5 * (p.hi - p.lo);
    std::array<Complex, 7> v{};
    for (int j = 0; j < 7; ++j) v[j] = checked(h, c + r * nodes[j]);
    // Newton form on the nodes, then monomial coefficients
    std::array<Complex, 7> dd = v;
    for (int level = 1; level < 7; ++level)
      for (int j = 6; j >= level; --j) dd[j] = (dd[j] - dd[j - 1]) / (nodes[j] - nodes[j - level]);
    std::array<Complex, 7> coef{};
    for (int j = 6; j >= 0; --j) {
      // coef <- coef * (xi - nodes[j]) + dd[j]
      for (int m = 6; m >= 1; --m) coef[m] = coef[m - 1] - nodes[j] * coef[m];
      coef[0] = -nodes[j] * coef[0] + dd[j];
    }
    double err = 0.0;
    for (double xi : checks) {
      Complex pv{};
      for (int m = 6; m >= 0; --m) pv = pv * xi + coef[m];
      err = std::max(err, std::abs(pv - checked(h, c + r * xi)));
    }
    if (err <= tol || p.depth >= 40) {
      if (err > tol && err > 1e-8 * scale)
        throw InstabilityError("oscquad", "cannot resolve closed-form h on a Filon panel");
      sum += polynomial_panel(coef, c, r, omega);
    } else {
      stack.push_back({c, p.hi, p.depth + 1});
      stack.push_back({p.lo, c, p.depth + 1});
    }
  }
  return sum;
}

}  // namespace

// ---------------------------------------------------------------------------

TimeFunction TimeFunction::closed_form(std::function<Complex(double)> h, double t_max) {
  if (!h) throw InputError("oscquad", "closed-form h needs a callable");
  if (!(t_max > 0.0)) throw InputError("oscquad", "t_max must be positive");
  TimeFunction f;
  f.kind_ = Kind::ClosedForm;
  f.h_ = std::move(h);
  f.t_max_ = t_max;
  return f;
}

TimeFunction TimeFunction::sampled(double dt, std::vector<Complex> samples) {
  if (!(dt > 0.0)) throw InputError("oscquad", "sample spacing must be positive");
  if (samples.size() < 4) throw InputError("oscquad", "sampled h needs at least four samples");
  for (const auto& s : samples)
    if (!finite(s)) throw InputError("oscquad", "non-finite sample in h");
  TimeFunction f;
  f.kind_ = Kind::Sampled;
  f.dt_ = dt;
  f.t_max_ = dt * static_cast<double>(samples.size() - 1);
  const std::size_t n = samples.size() - 1;
  f.cubics_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) f.cubics_[i] = local_cubic(-1.0, &samples[0]);
    else if (i + 1 == n) f.cubics_[i] = local_cubic(-5.0, &samples[i - 2]);
    else f.cubics_[i] = local_cubic(-3.0, &samples[i - 1]);
  }
  f.samples_ = std::move(samples);
  return f;
}

TimeFunction TimeFunction::exponential_sum(std::vector<Complex> amplitudes, std::vector<double> frequencies) {
  if (amplitudes.size() != frequencies.size())
    throw InputError("oscquad", "amplitude and frequency counts differ");
  for (std::size_t m = 0; m < amplitudes.size(); ++m)
    if (!finite(amplitudes[m]) || !std::isfinite(frequencies[m]))
      throw InputError("oscquad", "non-finite exponential-sum term");
  TimeFunction f;
  f.kind_ = Kind::ExponentialSum;
  f.t_max_ = std::numeric_limits<double>::infinity();
  f.samples_ = std::move(amplitudes);
  f.frequencies_ = std::move(frequencies);
  return f;
}

Complex TimeFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::ClosedForm: return h_(s);
    case Kind::ExponentialSum: {
      Complex sum{};
      for (std::size_t m = 0; m < samples_.size(); ++m) sum += samples_[m] * std::polar(1.0, frequencies_[m] * s);
      return sum;
    }
    case Kind::Sampled: {
      const std::size_t i =
          std::min(cubics_.size() - 1, static_cast<std::size_t>(std::max(0.0, std::floor(s / dt_))));
      const double xi = (s - dt_ * static_cast<double>(i)) / (0.5 * dt_) - 1.0;
      const auto& a = cubics_[i];
      return ((a[3] * xi + a[2]) * xi + a[1]) * xi + a[0];
    }
  }
  return {};
}

TimeFunction TimeFunction::scaled(Complex factor) const {
  TimeFunction f = *this;
  switch (kind_) {
    case Kind::ClosedForm: {
      auto inner = h_;
      f.h_ = [inner, factor](double s) { return factor * inner(s); };
      break;
    }
    case Kind::Sampled:
      for (auto& s : f.samples_) s *= factor;
      for (auto& c : f.cubics_)
        for (auto& a : c) a *= factor;
      break;
    case Kind::ExponentialSum:
      for (auto& s : f.samples_) s *= factor;
      break;
  }
  return f;
}

// ---------------------------------------------------------------------------

std::array<Complex, 7> monomial_moments(double sigma) {
  std::array<Complex, 7> mu{};
  if (std::abs(sigma) <= 8.0) {
    using G = boost::math::quadrature::gauss<double, 30>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t q = 0; q < x.size(); ++q) {
      const Complex em = std::polar(1.0, -sigma * x[q]);
      const Complex ep = std::conj(em);
      double pw = 1.0;
      for (int m = 0; m < 7; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        mu[m] += x[q] == 0.0 ? w[q] * pw * em : w[q] * pw * (em + sign * ep);
        pw *= x[q];
      }
    }
    return mu;
  }
  const Complex em = std::polar(1.0, -sigma), ep = std::conj(em);
  const Complex is(0.0, sigma);
  mu[0] = 2.0 * std::sin(sigma) / sigma;
  for (int m = 1; m < 7; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    mu[m] = (em - sign * ep) / (-is) + (static_cast<double>(m) / is) * mu[m - 1];
  }
  return mu;
}

Complex oscillatory_integral(const TimeFunction& h, double omega, double a, double b) {
  if (!(b >= a)) throw InputError("oscquad", "integration interval is reversed");
  if (a < 0.0) throw InputError("oscquad", "integration interval starts before 0");
  if (b > h.t_max() * (1.0 + 1e-12) + 1e-300)
    throw InputError("oscquad", "t exceeds the domain of h (t_max = " + std::to_string(h.t_max()) + ")");
  b = std::min(b, h.t_max());
  if (b == a) return {};
  switch (h.kind()) {
    case TimeFunction::Kind::Sampled: return sampled_integral(h, omega, a, b);
    case TimeFunction::Kind::ExponentialSum: return exponential_sum_integral(h, omega, a, b);
    case TimeFunction::Kind::ClosedForm:
      if (std::abs(omega) * (b - a) <= kFilonThreshold) return gauss_integral(h.function(), omega, a, b);
      return filon_integral(h.function(), omega, a, b);
  }
  return {};
}

Complex moment(const TimeFunction& h, double k, double t) {
  if (!(t >= 0.0)) throw InputError("oscquad", "moment needs t >= 0");
  return oscillatory_integral(h, k * k * k, 0.0, t);
}

std::vector<Complex> moment_batch(const TimeFunction& h, std::span<const double> ks, double t) {
  std::vector<Complex> out(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) out[i] = moment(h, ks[i], t);
  return out;
}

std::vector<Complex> cumulative_moments(const TimeFunction& h, double k, std::span<const double> times) {
  const double omega = k * k * k;
  std::vector<Complex> out(times.size());
  Complex acc{};
  double prev = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (times[m] < prev) throw InputError("oscquad", "times must be ascending and non-negative");
    acc += oscillatory_integral(h, omega, prev, times[m]);
    out[m] = acc;
    prev = times[m];
  }
  return out;
}

Complex endpoint_moment(const BoundaryTraces& traces, int endpoint, double k, double t) {
  if (endpoint != 0 && endpoint != 1) throw InputError("oscquad", "endpoint must be 0 or 1");
  Complex m[3];
  for (int j = 0; j < 3; ++j) m[j] = moment(TimeFunction::sampled(traces.dt(), traces.series(endpoint, j)), k, t);
  return k * k * m[0] - Complex(0.0, k) * m[1] - m[2];
}

}  // namespace airy
