#pragma once

#include <vector>

#include "airybvp/core.hpp"

namespace airy::detail {

/// e^{i kappa_n x}, n = -N..N, kappa_n = 2 pi n - shift, by recurrence in n.
inline void space_phases(int N, double shift, double x, std::vector<Complex>& out) {
  out.resize(static_cast<std::size_t>(2 * N + 1));
  const Complex step = std::polar(1.0, kTwoPi * x);
  Complex z = std::polar(1.0, (kTwoPi * (-N) - shift) * x);
  for (auto& e : out) {
    e = z;
    z *= step;
  }
}

inline Complex time_phase(double kappa, double t) { return std::polar(1.0, kappa * kappa * kappa * t); }

/// c_n e^{i kappa_n^3 t} in index order.
inline void timed_coefficients(const SpectralCoefficients& c, double t, std::vector<Complex>& out) {
  const int N = c.max_index();
  out.resize(c.size());
  for (int n = -N; n <= N; ++n) out[static_cast<std::size_t>(n + N)] = c[n] * time_phase(c.wavenumber(n), t);
}

inline Complex lattice_sum(const std::vector<Complex>& coeffs, const std::vector<Complex>& phases) {
  Complex s{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * phases[i];
  return s;
}

}  // namespace airy::detail
