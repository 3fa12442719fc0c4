#include <doctest.h>

#include <cmath>

#include "airybvp/periodic.hpp"
#include "oracle.hpp"

using namespace airy;

TEST_SUITE("periodic") {

TEST_CASE("single mode has one coefficient") {
  const auto c = fourier_coeffs(datum::fourier_mode(3), 8);
  for (int n = -8; n <= 8; ++n) CHECK(std::abs(c[n] - (n == 3 ? 1.0 : 0.0)) < 1e-13);
}

TEST_CASE("step coefficients match the closed form") {
  const auto c = fourier_coeffs(datum::step(0.0, 0.5), 200);
  CHECK(std::abs(c[0] - 0.5) < 1e-14);
  for (int n = 1; n <= 200; n += 7) {
    const double k = kTwoPi * n;
    const Complex want = (1.0 - std::polar(1.0, -0.5 * k)) / Complex(0.0, k);
    CHECK(std::abs(c[n] - want) < 1e-13);
    CHECK(std::abs(c[-n] - std::conj(want)) < 1e-13);
  }
}

TEST_CASE("smooth coefficients agree with brute-force quadrature and Parseval") {
  const auto f = datum::poly();
  const auto c = fourier_coeffs(f, 64);
  for (int n : {0, 1, 5, 17, 64}) {
    const Complex want = oracle::oscillatory([&](double x) { return f(x); }, kTwoPi * n, 0.0, 1.0);
    CHECK(std::abs(c[n] - want) < 1e-14);
  }
  double energy = 0.0;
  for (auto e : c.entries()) energy += std::norm(e);
  CHECK(energy == doctest::Approx(1.0 / 630.0).epsilon(1e-11));
}

TEST_CASE("shifted coefficients") {
  const double theta = 0.4;
  const auto c = fourier_coeffs_shifted(datum::fourier_mode(1), 6, theta);
  CHECK(c.shift() == theta);
  for (int n = -6; n <= 6; ++n) {
    const double d = kTwoPi * (1 - n) + theta;
    const Complex want = (std::polar(1.0, d) - 1.0) / Complex(0.0, d);
    CHECK(std::abs(c[n] - want) < 1e-13);
  }
}

TEST_CASE("sampled data use the exact DFT and refuse aliasing") {
  const int M = 64;
  std::vector<Complex> s(M);
  for (int j = 0; j < M; ++j) s[j] = datum::poly()(static_cast<double>(j) / M);
  const auto f = InitialDatum::sampled(s, Regularity::SmoothPeriodic);
  const auto c = fourier_coeffs(f, 16);
  for (int n = -16; n <= 16; ++n) {
    Complex dft{};
    for (int j = 0; j < M; ++j) dft += s[j] * std::polar(1.0, -kTwoPi * n * j / M);
    CHECK(std::abs(c[n] - dft / static_cast<double>(M)) < 1e-15);
  }
  CHECK_THROWS_AS(fourier_coeffs(f, 32), AliasingError);
  CHECK_NOTHROW(fourier_coeffs(f, 31));
}

TEST_CASE("evolution and pointwise evaluation") {
  const auto c = fourier_coeffs(datum::bump(0.4, 0.2), 48);
  const double t = 3e-4;
  const auto e = evolve(c, t);
  for (int n = -48; n <= 48; n += 5) {
    const double k = kTwoPi * n;
    CHECK(std::abs(e[n] - c[n] * std::polar(1.0, k * k * k * t)) < 1e-15);
  }
  const auto m = fourier_coeffs(datum::fourier_mode(2), 4);
  const double k = 2.0 * kTwoPi;
  CHECK(std::abs(eval_v(m, 0.3, t) - std::polar(1.0, k * 0.3 + k * k * k * t)) < 1e-13);
}

TEST_CASE("field evaluation is bit-identical to pointwise evaluation") {
  const auto c = fourier_coeffs_shifted(datum::bump(0.5, 0.3), 40, 0.9);
  const SpaceGrid grid(96);
  const std::vector<double> ts{0.0, 1e-4, 2.5e-3};
  const auto field = eval_v_field(c, grid, ts);
  for (std::size_t m = 0; m < ts.size(); ++m)
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(field(i, m) == eval_v(c, grid[i], ts[m]));
}

TEST_CASE("boundary traces of a single mode") {
  const auto m = fourier_coeffs(datum::fourier_mode(2), 4);
  const double k = 2.0 * kTwoPi;
  const std::vector<double> ts{0.0, 1e-3};
  for (int j = 0; j < 3; ++j)
    for (int endpoint = 0; endpoint < 2; ++endpoint) {
      const auto tr = boundary_trace_v(m, j, ts, TraceMode::Plain, endpoint);
      for (std::size_t q = 0; q < ts.size(); ++q) {
        const Complex want = std::pow(Complex(0.0, k), j) * std::polar(1.0, k * k * k * ts[q]);
        CHECK(std::abs(tr[q] - want) < 1e-9 * std::pow(k, j));
      }
    }
}

TEST_CASE("trace functions reproduce sampled traces") {
  const auto c = fourier_coeffs(datum::poly(), 32);
  const std::vector<double> ts{0.0, 2e-4, 7e-4};
  for (int j = 0; j < 3; ++j) {
    const auto fn = boundary_trace_function(c, j);
    const auto tr = boundary_trace_v(c, j, ts);
    CHECK(fn.kind() == TimeFunction::Kind::ExponentialSum);
    for (std::size_t q = 0; q < ts.size(); ++q) CHECK(std::abs(fn(ts[q]) - tr[q]) < 1e-10);
  }
}

TEST_CASE("second-derivative trace of bounded-variation data needs summation") {
  const auto c = fourier_coeffs(datum::step(0.25, 0.5), 64);
  const std::vector<double> ts{1e-4};
  CHECK_THROWS_AS(boundary_trace_v(c, 2, ts), DivergentSeriesError);
  CHECK_THROWS_AS(boundary_trace_function(c, 2), DivergentSeriesError);
  CHECK_NOTHROW(boundary_trace_v(c, 2, ts, TraceMode::Cesaro));
  CHECK_NOTHROW(boundary_trace_v(c, 1, ts));
  CHECK_THROWS_AS(boundary_trace_v(c, 3, ts), InputError);
}

}
