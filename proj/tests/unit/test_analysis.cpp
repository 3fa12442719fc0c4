#include <doctest.h>

#include <cmath>

#include "airybvp/analysis.hpp"

using namespace airy;

namespace {

std::vector<Complex> step_profile(int M, double lo, double hi, std::vector<double>& xs) {
  std::vector<Complex> u(M);
  xs.resize(M);
  for (int i = 0; i < M; ++i) {
    xs[i] = static_cast<double>(i) / M;
    u[i] = (xs[i] >= lo && xs[i] < hi) ? 1.0 : 0.0;
  }
  return u;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("decay exponent of an exact power law") {
  std::vector<double> m(129);
  for (int n = 1; n <= 128; ++n) m[n] = 3.0 / (static_cast<double>(n) * n);
  const auto r = decay_exponent(m, 16, 128);
  CHECK(r.alpha == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::exp(r.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(r.residual < 1e-12);
  CHECK(r.used == 113);

  // every other coefficient vanishing, as for an odd-symmetric datum
  for (int n = 2; n <= 128; n += 2) m[n] = 0.0;
  const auto odd = decay_exponent(m, 16, 128);
  CHECK(odd.excluded_zeros == 57);
  CHECK(odd.alpha == doctest::Approx(2.0).epsilon(1e-12));

  // roundoff in place of exact zeros
  for (int n = 2; n <= 128; n += 2) m[n] = 1e-17 * (1.0 + 0.5 * std::sin(n));
  const auto noisy = decay_exponent(m, 16, 128);
  CHECK(noisy.excluded_zeros == 57);
  CHECK(noisy.alpha == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(decay_exponent(m, 16, 20), FitError);
  CHECK_THROWS_AS(decay_exponent(m, 0, 64), InputError);
  CHECK_THROWS_AS(decay_exponent(m, 16, 129), InputError);
  std::vector<double> sparse(129, 0.0);
  for (int n = 16; n <= 22; ++n) sparse[n] = 1.0;
  CHECK_THROWS_AS(decay_exponent(sparse, 16, 128), FitError);
}

TEST_CASE("magnitudes average the two signs") {
  std::vector<Complex> c{Complex(0.0, 4.0), Complex(3.0), Complex(2.0), Complex(0.0), Complex(1.0)};
  const auto m = magnitudes_by_index(SpectralCoefficients(2, 0.0, c));
  REQUIRE(m.size() == 3);
  CHECK(m[0] == doctest::Approx(2.0));
  CHECK(m[1] == doctest::Approx(std::sqrt(4.5)));
  CHECK(m[2] == doctest::Approx(std::sqrt(8.5)));
}

TEST_CASE("a step has one jump and a smooth profile none") {
  std::vector<double> xs;
  auto u = step_profile(256, 0.0, 0.5, xs);
  for (auto& z : u) z = 1.0 - z;  // zero on [0, 1/2), one after
  auto jumps = detect_jumps(u, xs);
  REQUIRE(jumps.size() == 1);
  CHECK(std::abs(jumps[0].location - 0.5) <= 1.0 / 256.0);
  CHECK(jumps[0].magnitude == doctest::Approx(1.0));

  std::vector<Complex> smooth(256);
  for (int i = 0; i < 256; ++i) smooth[i] = std::sin(kTwoPi * xs[i]);
  CHECK(detect_jumps(smooth, xs).empty());
  CHECK_THROWS_AS(detect_jumps(std::span(smooth).first(32), std::span(xs).first(32)), ContractViolation);
}

TEST_CASE("periodic detection wraps and merges the seam") {
  std::vector<double> xs;
  JumpDetector cfg;
  cfg.periodic = true;
  const auto a = step_profile(256, 0.25, 0.75, xs);
  const auto inner = detect_jumps(a, xs, cfg);
  REQUIRE(inner.size() == 2);
  CHECK(std::abs(inner[0].location - 0.25) <= 1.0 / 256.0);
  CHECK(std::abs(inner[1].location - 0.75) <= 1.0 / 256.0);

  const auto b = step_profile(256, 0.0, 0.5, xs);
  const auto seam = detect_jumps(b, xs, cfg);
  REQUIRE(seam.size() == 2);
  CHECK(seam[0].magnitude == doctest::Approx(1.0));
  cfg.periodic = false;
  CHECK(detect_jumps(b, xs, cfg).size() == 1);
}

TEST_CASE("nearby runs merge into one jump sized by the rise across them") {
  // a unit rise over two steps with a quiet plateau between them
  std::vector<double> xs(256);
  std::vector<Complex> u(256);
  for (int i = 0; i < 256; ++i) {
    xs[i] = i / 256.0;
    u[i] = i < 100 ? 0.0 : (i < 106 ? 0.5 : 1.0);
  }
  JumpDetector cfg;
  auto split = detect_jumps(u, xs, cfg);
  REQUIRE(split.size() == 2);
  CHECK(split[0].magnitude == doctest::Approx(0.5));
  cfg.merge = 3;
  CHECK(detect_jumps(u, xs, cfg).size() == 2);
  cfg.merge = 4;
  auto merged = detect_jumps(u, xs, cfg);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].magnitude == doctest::Approx(1.0));
  CHECK(merged[0].location >= xs[99]);
  CHECK(merged[0].location <= xs[106]);
}

TEST_CASE("periodic seam merging respects the gap") {
  std::vector<double> xs(128);
  std::vector<Complex> u(128);
  for (int i = 0; i < 128; ++i) {
    xs[i] = i / 128.0;
    u[i] = (i >= 2 && i < 64) ? 1.0 : 0.0;
  }
  JumpDetector cfg;
  cfg.periodic = true;
  CHECK(detect_jumps(u, xs, cfg).size() == 2);
  u[126] = 0.5;  // split rise straddling the seam
  cfg.merge = 0;
  CHECK(detect_jumps(u, xs, cfg).size() == 4);
  cfg.merge = 4;
  const auto j = detect_jumps(u, xs, cfg);
  REQUIRE(j.size() == 2);
  CHECK(std::max(j[0].magnitude, j[1].magnitude) == doctest::Approx(1.0));
}

TEST_CASE("rational multiples of the revival period") {
  auto c = classify_time(kRevivalPeriod / 3.0, 8);
  CHECK(c.rational);
  CHECK(c.p == 1);
  CHECK(c.q == 3);
  c = classify_time(4.0 / 6.0 * kRevivalPeriod, 8);
  CHECK(c.p == 2);
  CHECK(c.q == 3);
  CHECK(classify_time(0.0, 8).q == 1);
  CHECK_FALSE(classify_time(std::sqrt(2.0) * kRevivalPeriod, 8).rational);
  CHECK_FALSE(classify_time(kRevivalPeriod / 11.0, 8).rational);
  CHECK_THROWS_AS(classify_time(1.0, 0), InputError);
}

TEST_CASE("revival candidates") {
  const auto r = revival_candidates(2, 1.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(0.5 * kRevivalPeriod));
  CHECK(r[1] == doctest::Approx(kRevivalPeriod));
  // Farey sequence F_4 without zero: 1/4 1/3 1/2 2/3 3/4 1
  CHECK(revival_candidates(4, 1.0).size() == 6);
  CHECK(revival_candidates(3, 2.0).size() == 8);
}

TEST_CASE("periodicity scan finds the revival period") {
  // two lattice modes: at T_rev / 2 the n = 1 mode flips sign, the n = 2 mode does not
  auto profile = [](double t) {
    std::vector<Complex> u(129);
    for (int i = 0; i <= 128; ++i) {
      const double x = i / 128.0, k1 = kTwoPi, k2 = 2.0 * kTwoPi;
      u[i] = std::polar(1.0, k1 * x + k1 * k1 * k1 * t) + std::polar(1.0, k2 * x + k2 * k2 * k2 * t);
    }
    return u;
  };
  const std::vector<double> cands{0.5 * kRevivalPeriod, kRevivalPeriod};
  const std::vector<double> t0{0.0, 1e-4, 3e-3};
  const auto rep = periodicity_scan(profile, cands, t0, 1e-8);
  REQUIRE(rep.entries.size() == 2);
  CHECK_FALSE(rep.entries[0].periodic);
  CHECK(rep.entries[0].max_distance == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(rep.entries[1].periodic);
  CHECK(rep.any_periodic);
  CHECK_THROWS_AS(periodicity_scan(profile, cands, std::vector<double>{}, 1e-8), InputError);
}

}
