#pragma once

#include <optional>

#include "airybvp/core.hpp"
#include "airybvp/oscquad.hpp"
#include "airybvp/periodic.hpp"

namespace airy {

/// w_hat(kappa_n, t_m) for each requested time; entry m is the full coefficient
/// set at times[m], so the field is sum_n w_hat e^{i kappa_n x}.
using CoefficientHistory = std::vector<SpectralCoefficients>;

/// Forced zero-data problem on the lattice kappa_n = 2 pi n - shift with boundary jumps
/// h_j = d^j w(0) - e^{i shift} d^j w(1):
///   w_hat = e^{i kappa^3 t} [ -kappa^2 H_0 + i kappa H_1 + H_2 ],  H_j = int_0^t e^{-i kappa^3 s} h_j ds.
CoefficientHistory forced_coefficients(int N, double shift, const std::array<std::optional<TimeFunction>, 3>& h,
                                       std::span<const double> times);

CoefficientHistory dirichlet_coefficients(const TimeFunction& h1, const TimeFunction& h2, int N,
                                          std::span<const double> times);
/// h1 = (gamma - 1) u_x(1)
CoefficientHistory mixed_coefficients(double gamma, const TimeFunction& ux1, const TimeFunction& h2, int N,
                                      std::span<const double> times);
/// h_j = (1 - beta_j) d^j u(0), read from traces at x = 0
CoefficientHistory pseudoperiodic_coefficients(const std::array<Complex, 3>& beta, const BoundaryTraces& traces, int N,
                                               std::span<const double> times);
/// Quasi-periodic correction to the periodic series v:
///   (1 - e^{i theta}) e^{i kappa^3 t} int_0^t e^{-i kappa^3 s} [kappa^2 v - i kappa v_x - v_xx](0, s) ds
CoefficientHistory quasiperiodic_coefficients(double theta, const SpectralCoefficients& v, int N,
                                              std::span<const double> times, TraceMode mode = TraceMode::Plain);
/// Forced problem on the shifted lattice, h_j = d^j u(0) - e^{i theta} d^j u(1), h_0 = 0.
CoefficientHistory forced_quasi_coefficients(double theta, const TimeFunction& h1, const TimeFunction& h2, int N,
                                             std::span<const double> times);

/// sum_n c_n(t_m) e^{i kappa_n x_i}; optional raised-cosine taper for display.
SpaceTimeField synthesize(const CoefficientHistory& coeffs, const SpaceGrid& grid, std::span<const double> times,
                          bool raised_cosine = false);

SpaceTimeField w_dirichlet(const TimeFunction& h1, const TimeFunction& h2, int N, const SpaceGrid& grid,
                           std::span<const double> times);
SpaceTimeField w_mixed(double gamma, const TimeFunction& ux1, const TimeFunction& h2, int N, const SpaceGrid& grid,
                       std::span<const double> times);
SpaceTimeField w_pseudoperiodic(const std::array<Complex, 3>& beta, const BoundaryTraces& traces, int N,
                                const SpaceGrid& grid, std::span<const double> times);
SpaceTimeField w_quasiperiodic(double theta, const SpectralCoefficients& v, int N, const SpaceGrid& grid,
                               std::span<const double> times, TraceMode mode = TraceMode::Plain);
SpaceTimeField w_forced_quasi(double theta, const TimeFunction& h1, const TimeFunction& h2, int N,
                              const SpaceGrid& grid, std::span<const double> times);

/// Quasi-periodic series sum_n f_hat(k_n - theta) e^{i(k_n - theta)x + i(k_n - theta)^3 t}.
SpectralCoefficients quasi_v_coeffs(const InitialDatum& f, int N, double theta);
SpaceTimeField eval_quasi_v_field(const SpectralCoefficients& c, const SpaceGrid& grid, std::span<const double> times);

/// u = v + w on a common grid.
SpaceTimeField compose_u(const SpaceTimeField& v, const SpaceTimeField& w);

}  // namespace airy
