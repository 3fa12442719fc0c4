#include <doctest.h>

#include <cmath>

#include "airybvp/periodic.hpp"
#include "airybvp/reference.hpp"

using namespace airy;

namespace {

ReferenceConfig small(int degree = 64, double T = 2e-3) {
  ReferenceConfig rc;
  rc.points = 128;
  rc.degree = degree;
  rc.dt = 2e-5;
  rc.final_time = T;
  rc.output_stride = 10;
  return rc;
}

// trapezoid rule on the uniform output grid, spectrally accurate for periodic data
double energy(const SpaceTimeField& f, std::size_t m) {
  const auto s = f.slice(m);
  double e = 0.5 * (std::norm(s.front()) + std::norm(s.back()));
  for (std::size_t i = 1; i + 1 < s.size(); ++i) e += std::norm(s[i]);
  return e * f.grid().spacing();
}

}  // namespace

TEST_SUITE("reference") {

TEST_CASE("zero datum stays zero") {
  const auto zero = InitialDatum::closed_form([](double) { return Complex{}; }, Regularity::SmoothPeriodic);
  const auto sol = solve_reference(zero, BoundarySpec(DirichletType{}), small());
  CHECK(sol.field.max_abs() == 0.0);
  CHECK(sol.traces.size() == 101);
}

TEST_CASE("periodic evolution conserves the L2 norm and matches the series") {
  const auto f = InitialDatum::closed_form([](double x) { return Complex(std::exp(std::sin(kTwoPi * x))); },
                                           Regularity::SmoothPeriodic, {}, true);
  const auto sol = solve_reference(f, BoundarySpec(Periodic{}), small());
  const double e0 = energy(sol.field, 0);
  CHECK(energy(sol.field, sol.field.steps() - 1) == doctest::Approx(e0).epsilon(1e-9));
  const auto series = eval_v_field(fourier_coeffs(f, 64), sol.field.grid(), sol.field.times());
  CHECK(max_abs_difference(sol.field, series) < 1e-8);
}

TEST_CASE("Dirichlet traces satisfy the boundary conditions") {
  const auto sol = solve_reference(datum::poly(), BoundarySpec(DirichletType{}), small());
  double worst = 0.0;
  for (std::size_t m = 0; m < sol.traces.size(); ++m)
    worst = std::max({worst, std::abs(sol.traces.series(0, 0)[m]), std::abs(sol.traces.series(1, 0)[m]),
                      std::abs(sol.traces.series(1, 1)[m])});
  CHECK(worst < 1e-10);
  CHECK(std::abs(sol.traces.series(0, 1).back()) > 1e-3);
}

TEST_CASE("quasi-periodic traces carry the phase") {
  const double theta = 0.9;
  const auto sol = solve_reference(datum::bump(0.5, 0.25), BoundarySpec(QuasiPeriodic{theta}), small());
  const Complex e = std::polar(1.0, theta);
  for (int j = 0; j < 3; ++j)
    for (std::size_t m = 0; m < sol.traces.size(); m += 20) {
      const Complex a = sol.traces.series(0, j)[m], b = sol.traces.series(1, j)[m];
      CHECK(std::abs(a - e * b) < 1e-8 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("solution converges with polynomial degree") {
  const auto f = datum::bump(0.4, 0.3);
  const BoundarySpec bc(DirichletType{});
  const auto a = solve_reference(f, bc, small(96));
  const auto b = solve_reference(f, bc, small(128));
  const auto c = solve_reference(f, bc, small(160));
  const double ab = max_abs_difference(a.field, b.field), bc_ = max_abs_difference(b.field, c.field);
  CHECK(bc_ < 1e-4);
  CHECK(bc_ < 0.5 * ab);
}

TEST_CASE("ill-posed boundary combinations are refused") {
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(MixedDirichlet{0.5}), small()), IllPosedError);
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(PseudoPeriodic{{1.0, 2.0, 2.0}}), small()),
                  IllPosedError);
  CHECK(check_wellposedness(BoundarySpec(MixedDirichlet{0.5}), 64).ill_posed);
  const auto ok = check_wellposedness(BoundarySpec(DirichletType{}), 64);
  CHECK_FALSE(ok.ill_posed);
  CHECK(ok.coarse_degree == 32);
  CHECK_FALSE(check_wellposedness(BoundarySpec(MixedDirichlet{2.0}), 64).ill_posed);
  CHECK_FALSE(check_wellposedness(BoundarySpec(PseudoPeriodic{{2.0, 1.0, 0.5}}), 64).ill_posed);
}

TEST_CASE("configuration is validated") {
  auto rc = small();
  rc.dt = 5e-5;
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(Periodic{}), rc), InputError);
  rc = small();
  rc.output_stride = 7;
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(Periodic{}), rc), InputError);
  rc = small();
  rc.points = 32;
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(Periodic{}), rc), InputError);
  rc = small();
  rc.degree = 8;
  CHECK_THROWS_AS(solve_reference(datum::poly(), BoundarySpec(Periodic{}), rc), InputError);
}

TEST_CASE("Fornberg weights") {
  const std::vector<double> x{-1.0, 0.0, 1.0};
  const auto w2 = fd_weights(0.0, x, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  CHECK(w2[2] == doctest::Approx(1.0));
  const std::vector<double> y{0.0, 1.0, 2.0, 3.0};
  const auto w1 = fd_weights(0.0, y, 1);
  CHECK(w1[0] == doctest::Approx(-11.0 / 6.0));
  CHECK(w1[3] == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(fd_weights(0.0, x, 3), InputError);
}

TEST_CASE("finite-difference traces of a single mode") {
  const double k = kTwoPi;
  const SpaceGrid grid(512);
  const auto ts = uniform_times(1e-4, 4);
  SpaceTimeField f(grid, ts);
  for (std::size_t m = 0; m < ts.size(); ++m)
    for (std::size_t i = 0; i < grid.size(); ++i) f(i, m) = std::polar(1.0, k * grid[i] + k * k * k * ts[m]);
  const auto tr = extract_traces(f);
  CHECK(tr.dt() == doctest::Approx(1e-4));
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j < 3; ++j)
      for (std::size_t m = 0; m < ts.size(); ++m) {
        const Complex want = std::pow(Complex(0.0, k), j) * std::polar(1.0, k * k * k * ts[m]);
        CHECK(std::abs(tr.series(e, j)[m] - want) < 1e-5 * std::pow(k, j));
      }
}

TEST_CASE("global relation needs zero initial data") {
  const auto sol = solve_reference(datum::poly(), BoundarySpec(DirichletType{}), small());
  const std::vector<double> ks{1.0};
  CHECK_THROWS_AS(verify_global_relation(sol.field, ks, 2e-3), ContractViolation);
}

TEST_CASE("global relation holds for the Dirichlet correction") {
  const auto f = datum::poly();
  ReferenceConfig rc = small(128, 4e-3);
  rc.points = 512;
  rc.dt = 1e-5;
  rc.output_stride = 1;
  const auto sol = solve_reference(f, BoundarySpec(DirichletType{}), rc);
  const auto v = eval_v_field(fourier_coeffs(f, 256), sol.field.grid(), sol.field.times());
  std::vector<Complex> d(v.values().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = sol.field.values()[i] - v.values()[i];
  const SpaceTimeField w(sol.field.grid(), sol.field.times(), std::move(d));
  const std::vector<double> ks{-40.0, -7.5, 0.3, 12.0, 55.0};
  for (double r : verify_global_relation(w, ks, 4e-3)) CHECK(r < 1e-5);
}

}
