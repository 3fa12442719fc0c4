#pragma once

#include <optional>

#include "airybvp/core.hpp"

namespace airy {

/// Least-squares fit of log m_n against log n over n in [n_lo, n_hi]; alpha = -slope.
/// magnitudes[n] is the magnitude at |n| = n.  Entries at or below 1e-12 of the largest
/// magnitude count as zeros: they are skipped and counted.
DecayReport decay_exponent(std::span<const double> magnitudes, int n_lo, int n_hi);

/// sqrt((|c_n|^2 + |c_{-n}|^2) / 2) for n = 0..N.
std::vector<double> magnitudes_by_index(const SpectralCoefficients& c);

struct Jump {
  double location = 0.0;
  double magnitude = 0.0;
};

struct JumpDetector {
  int window = 1;             // half-width of the difference stencil, in grid points
  double factor = 5.0;        // threshold = max(factor * median increment, floor)
  double floor = 0.05;
  bool periodic = false;      // profile samples x_i = i/M on [0,1), wrapping at the ends
  int merge = 0;              // runs separated by at most this many quiet points are one jump
};

/// Flags runs where |u(x_{i+w}) - u(x_{i-w})| exceeds the threshold; each run is one
/// jump located at its largest increment, sized by the larger of that increment and the
/// rise across the run.
std::vector<Jump> detect_jumps(std::span<const Complex> profile, std::span<const double> xs,
                               const JumpDetector& cfg = {});

struct TimeClass {
  bool rational = false;
  long p = 0;
  long q = 0;
};

/// Rational multiple p/q of the revival period with q <= q_max, to 1e-9 absolute.
TimeClass classify_time(double t, int q_max, double tolerance = 1e-9);

struct PeriodicityEntry {
  double period = 0.0;
  double max_distance = 0.0;   // max over t0 of the L2 distance between profiles at t0 and t0 + period
  bool periodic = false;
};

struct PeriodicityReport {
  std::vector<PeriodicityEntry> entries;
  bool any_periodic = false;
};

/// profile(t) returns samples on a uniform grid covering [0,1] including both ends.
PeriodicityReport periodicity_scan(const std::function<std::vector<Complex>(double)>& profile,
                                   std::span<const double> candidates, std::span<const double> t0_samples,
                                   double tolerance);

/// (p/q) T_rev for coprime p, q with q <= q_max and 0 < p/q <= max_ratio, ascending.
std::vector<double> revival_candidates(int q_max, double max_ratio);

}  // namespace airy
