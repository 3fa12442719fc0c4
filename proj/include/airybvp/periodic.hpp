#pragma once

#include "airybvp/core.hpp"
#include "airybvp/oscquad.hpp"

namespace airy {

/// f_hat(2 pi n) = int_0^1 e^{-2 pi i n x} f(x) dx for |n| <= N.
SpectralCoefficients fourier_coeffs(const InitialDatum& f, int N);

/// f_hat(2 pi n - shift) for |n| <= N (quasi-periodic lattice).
SpectralCoefficients fourier_coeffs_shifted(const InitialDatum& f, int N, double shift);

/// c_n e^{i kappa_n^3 t}
SpectralCoefficients evolve(const SpectralCoefficients& c, double t);

/// sum_n c_n e^{i kappa_n x + i kappa_n^3 t}, summed in ascending n.
Complex eval_v(const SpectralCoefficients& c, double x, double t);

/// Same sum on a space-time grid; bit-identical to pointwise eval_v.
SpaceTimeField eval_v_field(const SpectralCoefficients& c, const SpaceGrid& grid, std::span<const double> times);

enum class TraceMode { Plain, Cesaro };

/// d^j v(x_e, t) at x_e = endpoint (0 or 1), j in {0,1,2}.
/// j = 2 on bounded-variation data needs TraceMode::Cesaro.
std::vector<Complex> boundary_trace_v(const SpectralCoefficients& c, int order, std::span<const double> times,
                                      TraceMode mode = TraceMode::Plain, int endpoint = 0);

/// The same trace as an exponential sum in t, for exact time moments.
TimeFunction boundary_trace_function(const SpectralCoefficients& c, int order, TraceMode mode = TraceMode::Plain,
                                     int endpoint = 0);

}  // namespace airy
