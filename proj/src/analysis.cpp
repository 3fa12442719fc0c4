#include "airybvp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace airy {

DecayReport decay_exponent(std::span<const double> magnitudes, int n_lo, int n_hi) {
  if (n_lo < 1) throw InputError("analysis", "fit range must start at n >= 1");
  if (n_hi < n_lo + 8) throw FitError("analysis", "fit range needs n_hi >= n_lo + 8");
  if (static_cast<std::size_t>(n_hi) >= magnitudes.size())
    throw InputError("analysis", "fit range exceeds the available coefficients");
  DecayReport r;
  r.n_lo = n_lo;
  r.n_hi = n_hi;
  double peak = 0.0;
  for (double m : magnitudes) {
    if (!std::isfinite(m)) throw InputError("analysis", "non-finite magnitude");
    peak = std::max(peak, m);
  }
  const double zero = 1e-12 * peak;
  std::vector<double> lx, ly;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double m = magnitudes[static_cast<std::size_t>(n)];
    if (m <= zero) {
      ++r.excluded_zeros;
      continue;
    }
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(m));
  }
  r.used = static_cast<int>(lx.size());
  if (lx.size() < 8) throw FitError("analysis", "fewer than 8 usable points in the fit range");
  const double k = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  r.alpha = -slope;
  r.intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (r.intercept + slope * lx[i]);
    ss += e * e;
  }
  r.residual = std::sqrt(ss / k);
  return r;
}

std::vector<double> magnitudes_by_index(const SpectralCoefficients& c) {
  std::vector<double> m(static_cast<std::size_t>(c.max_index()) + 1);
  m[0] = std::abs(c[0]);
  for (int n = 1; n <= c.max_index(); ++n) m[n] = std::sqrt(0.5 * (std::norm(c[n]) + std::norm(c[-n])));
  return m;
}

std::vector<Jump> detect_jumps(std::span<const Complex> profile, std::span<const double> xs, const JumpDetector& cfg) {
  if (profile.size() != xs.size()) throw ContractViolation("analysis", "profile and grid sizes differ");
  if (profile.size() < 64) throw ContractViolation("analysis", "jump detection needs at least 64 points");
  if (cfg.window < 1) throw ContractViolation("analysis", "window must be positive");
  const long n = static_cast<long>(profile.size());
  const long w = cfg.window;
  std::vector<long> idx;
  std::vector<double> inc;
  const long lo = cfg.periodic ? 0 : w, hi = cfg.periodic ? n : n - w;
  for (long i = lo; i < hi; ++i) {
    const long a = ((i - w) % n + n) % n, b = (i + w) % n;
    idx.push_back(i);
    inc.push_back(std::abs(profile[static_cast<std::size_t>(b)] - profile[static_cast<std::size_t>(a)]));
  }
  if (inc.empty()) return {};
  std::vector<double> sorted = inc;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double threshold = std::max(cfg.factor * median, cfg.floor);

  struct Run {
    std::size_t first, last, best;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k < inc.size();) {
    if (inc[k] <= threshold) {
      ++k;
      continue;
    }
    Run r{k, k, k};
    for (; k < inc.size() && inc[k] > threshold; ++k) {
      if (inc[k] > inc[r.best]) r.best = k;
      r.last = k;
    }
    if (!runs.empty() && r.first - runs.back().last <= static_cast<std::size_t>(cfg.merge) + 1) {
      if (inc[r.best] > inc[runs.back().best]) runs.back().best = r.best;
      runs.back().last = r.last;
    } else {
      runs.push_back(r);
    }
  }
  // a run crossing the periodic seam is one jump
  if (cfg.periodic && runs.size() > 1 &&
      runs.front().first + (inc.size() - 1 - runs.back().last) <= static_cast<std::size_t>(cfg.merge)) {
    if (inc[runs.back().best] > inc[runs.front().best]) runs.front().best = runs.back().best;
    runs.front().first = runs.back().first;
    runs.pop_back();
  }
  auto at = [&](long i) { return profile[static_cast<std::size_t>((i % n + n) % n)]; };
  std::vector<Jump> jumps;
  for (const auto& r : runs) {
    // rise across the whole run; a single-point run gives back its increment
    const double across = std::abs(at(idx[r.last] + w) - at(idx[r.first] - w));
    jumps.push_back({xs[static_cast<std::size_t>(idx[r.best])], std::max(inc[r.best], across)});
  }
  return jumps;
}

TimeClass classify_time(double t, int q_max, double tolerance) {
  if (q_max < 1) throw InputError("analysis", "q_max must be positive");
  const double tau = t / kRevivalPeriod;
  for (long q = 1; q <= q_max; ++q) {
    const long p = std::lround(tau * static_cast<double>(q));
    if (std::gcd(p, q) != 1) continue;
    if (std::abs(t - static_cast<double>(p) / static_cast<double>(q) * kRevivalPeriod) <= tolerance)
      return {true, p, q};
  }
  return {};
}

PeriodicityReport periodicity_scan(const std::function<std::vector<Complex>(double)>& profile,
                                   std::span<const double> candidates, std::span<const double> t0_samples,
                                   double tolerance) {
  if (t0_samples.empty()) throw InputError("analysis", "periodicity scan needs t0 samples");
  auto distance = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size() || a.size() < 2) throw ContractViolation("analysis", "profiles must share a grid");
    const double h = 1.0 / static_cast<double>(a.size() - 1);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double wt = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
      s += wt * std::norm(a[i] - b[i]);
    }
    return std::sqrt(s * h);
  };
  std::vector<std::vector<Complex>> base;
  base.reserve(t0_samples.size());
  for (double t0 : t0_samples) base.push_back(profile(t0));
  PeriodicityReport report;
  for (double T : candidates) {
    PeriodicityEntry e;
    e.period = T;
    for (std::size_t s = 0; s < t0_samples.size(); ++s)
      e.max_distance = std::max(e.max_distance, distance(base[s], profile(t0_samples[s] + T)));
    e.periodic = e.max_distance < tolerance;
    report.any_periodic = report.any_periodic || e.periodic;
    report.entries.push_back(e);
  }
  return report;
}

std::vector<double> revival_candidates(int q_max, double max_ratio) {
  std::vector<double> ratios;
  for (long q = 1; q <= q_max; ++q)
    for (long p = 1; static_cast<double>(p) / static_cast<double>(q) <= max_ratio + 1e-15; ++p)
      if (std::gcd(p, q) == 1) ratios.push_back(static_cast<double>(p) / static_cast<double>(q));
  std::sort(ratios.begin(), ratios.end());
  for (double& r : ratios) r *= kRevivalPeriod;
  return ratios;
}

}  // namespace airy
