#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace airy {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Revival period of the periodic Airy propagator on [0,1].
/// e^{i k_n^3 t} with k_n = 2 pi n equals 1 for every n once
/// (2 pi)^3 t is a multiple of 2 pi, i.e. t = 1 / (4 pi^2).
inline constexpr double kRevivalPeriod = 1.0 / (4.0 * kPi * kPi);

// ---------------------------------------------------------------------------
// errors

class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

#define AIRY_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                      \
   public:                                                         \
    using Error::Error;                                            \
  }

AIRY_DEFINE_ERROR(InputError);
AIRY_DEFINE_ERROR(ContractViolation);
AIRY_DEFINE_ERROR(AliasingError);
AIRY_DEFINE_ERROR(DivergentSeriesError);
AIRY_DEFINE_ERROR(IllPosedError);
AIRY_DEFINE_ERROR(InstabilityError);
AIRY_DEFINE_ERROR(FitError);

#undef AIRY_DEFINE_ERROR

// ---------------------------------------------------------------------------
// spectral coefficients

enum class Regularity { SmoothPeriodic, SmoothNonmatching, BoundedVariation };

const char* to_string(Regularity r);

/// Coefficients c_n, n in [-N, N], attached to wavenumbers 2 pi n - shift.
/// Immutable once built.
class SpectralCoefficients {
 public:
  SpectralCoefficients() = default;
  SpectralCoefficients(int max_index, double shift, std::vector<Complex> entries,
                       bool real_valued = false,
                       Regularity regularity = Regularity::SmoothPeriodic);

  static SpectralCoefficients zeros(int max_index, double shift = 0.0);

  int max_index() const { return max_index_; }
  double shift() const { return shift_; }
  bool real_valued() const { return real_valued_; }
  Regularity regularity() const { return regularity_; }
  std::size_t size() const { return entries_.size(); }

  double wavenumber(int n) const { return kTwoPi * n - shift_; }
  Complex operator[](int n) const { return entries_[static_cast<std::size_t>(n + max_index_)]; }
  std::span<const Complex> entries() const { return entries_; }

 private:
  int max_index_ = 0;
  double shift_ = 0.0;
  std::vector<Complex> entries_{Complex{}};
  bool real_valued_ = false;
  Regularity regularity_ = Regularity::SmoothPeriodic;
};

// ---------------------------------------------------------------------------
// initial data

class InitialDatum {
 public:
  using Function = std::function<Complex(double)>;

  /// Closed-form datum; breakpoints mark interior discontinuities in f or f'.
  static InitialDatum closed_form(Function f, Regularity regularity,
                                  std::vector<double> breakpoints = {},
                                  bool real_valued = false);
  /// Samples f(j/M), j = 0..M-1, M a power of two.
  static InitialDatum sampled(std::vector<Complex> samples, Regularity regularity);

  bool is_sampled() const { return !samples_.empty(); }
  Regularity regularity() const { return regularity_; }
  bool real_valued() const { return real_valued_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Complex>& samples() const { return samples_; }
  /// Normalized DFT of the samples, (1/M) sum_j f_j e^{-2 pi i m j / M}, index m mod M.
  const std::vector<Complex>& sample_dft() const { return sample_dft_; }
  const Function& function() const { return f_; }

  /// Value at x; sampled data are evaluated through their trigonometric interpolant.
  Complex operator()(double x) const;

 private:
  Function f_;
  std::vector<Complex> samples_;
  std::vector<Complex> sample_dft_;
  std::vector<double> breakpoints_;
  Regularity regularity_ = Regularity::SmoothPeriodic;
  bool real_valued_ = false;
};

namespace datum {

/// e^{2 pi i m x}
InitialDatum fourier_mode(int m);
/// Indicator of [a, b), 0 <= a < b <= 1.
InitialDatum step(double a, double b);
/// exp(1 - 1/(1 - s^2)) with s = (x - center) / half_width, zero outside.
InitialDatum bump(double center, double half_width);
/// exp(-((x - center)/width)^2)
InitialDatum gaussian(double center, double width);
/// x^2 (1 - x)^2
InitialDatum poly();

}  // namespace datum

// ---------------------------------------------------------------------------
// boundary conditions

struct Periodic {};
struct DirichletType {};
struct MixedDirichlet {
  double gamma = 2.0;
};
struct PseudoPeriodic {
  std::array<Complex, 3> beta{Complex{1.0}, Complex{1.0}, Complex{1.0}};
};
struct QuasiPeriodic {
  double theta = 0.0;
};
/// u(0) = e^{i theta} u(1), u_x(0) = b1 e^{i theta} u_x(1), u_xx(0) = b2 e^{i theta} u_xx(1)
struct QuasiCoupled {
  double theta = 0.0;
  Complex b1{2.0};
  Complex b2{1.0};
};

using BoundaryFamily =
    std::variant<Periodic, DirichletType, MixedDirichlet, PseudoPeriodic, QuasiPeriodic, QuasiCoupled>;

/// Three boundary rows: sum_j a_j d^j u(0) + b_j d^j u(1) = 0.
/// Columns are (u, u_x, u_xx at 0, u, u_x, u_xx at 1).
using BoundaryRows = std::array<std::array<Complex, 6>, 3>;

class BoundarySpec {
 public:
  BoundarySpec() = default;
  explicit BoundarySpec(BoundaryFamily family, bool wellposedness_assumed = true);

  const BoundaryFamily& family() const { return family_; }
  bool wellposedness_assumed() const { return wellposedness_assumed_; }
  std::string name() const;
  BoundaryRows rows() const;

  template <class T>
  const T* get() const { return std::get_if<T>(&family_); }

  friend bool operator==(const BoundarySpec&, const BoundarySpec&);

 private:
  BoundaryFamily family_{Periodic{}};
  bool wellposedness_assumed_ = true;
};

const std::vector<std::string>& family_names();

// ---------------------------------------------------------------------------
// traces, fields, reports

/// Time series of u, u_x, u_xx at x = 0 and x = 1 on t_m = m dt.
class BoundaryTraces {
 public:
  BoundaryTraces() = default;
  BoundaryTraces(double dt, std::array<std::array<std::vector<Complex>, 3>, 2> series);

  double dt() const { return dt_; }
  std::size_t size() const { return series_[0][0].size(); }
  double time(std::size_t m) const { return dt_ * static_cast<double>(m); }
  double final_time() const { return time(size() - 1); }
  const std::vector<Complex>& series(int endpoint, int order) const { return series_.at(endpoint).at(order); }

  /// Samples of sum_j at0[j] d^j u(0) + at1[j] d^j u(1).
  std::vector<Complex> combination(const std::array<Complex, 3>& at0,
                                   const std::array<Complex, 3>& at1) const;

 private:
  double dt_ = 0.0;
  std::array<std::array<std::vector<Complex>, 3>, 2> series_;
};

/// Uniform grid x_i = i / P, i = 0..P.
class SpaceGrid {
 public:
  explicit SpaceGrid(int intervals = 1);
  int intervals() const { return intervals_; }
  std::size_t size() const { return static_cast<std::size_t>(intervals_) + 1; }
  double spacing() const { return 1.0 / intervals_; }
  double operator[](std::size_t i) const {
    return i == static_cast<std::size_t>(intervals_) ? 1.0 : static_cast<double>(i) / intervals_;
  }
  std::vector<double> points() const;

 private:
  int intervals_;
};

std::vector<double> uniform_times(double dt, std::size_t count);

/// Complex samples u(x_i, t_m), stored time-major.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(SpaceGrid grid, std::vector<double> times);
  SpaceTimeField(SpaceGrid grid, std::vector<double> times, std::vector<Complex> values);

  const SpaceGrid& grid() const { return grid_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t points() const { return grid_.size(); }
  std::size_t steps() const { return times_.size(); }

  Complex& operator()(std::size_t i, std::size_t m) { return values_[m * grid_.size() + i]; }
  Complex operator()(std::size_t i, std::size_t m) const { return values_[m * grid_.size() + i]; }
  std::span<const Complex> slice(std::size_t m) const {
    return {values_.data() + m * grid_.size(), grid_.size()};
  }
  std::span<Complex> slice(std::size_t m) { return {values_.data() + m * grid_.size(), grid_.size()}; }
  const std::vector<Complex>& values() const { return values_; }

  /// Index of the snapshot at time t (tolerance 1e-12 relative); throws InputError if absent.
  std::size_t time_index(double t) const;
  bool same_layout(const SpaceTimeField& other) const;
  double max_abs() const;

 private:
  SpaceGrid grid_{1};
  std::vector<double> times_;
  std::vector<Complex> values_;
};

/// max |a - b| over a common layout.
double max_abs_difference(const SpaceTimeField& a, const SpaceTimeField& b);

struct DecayReport {
  double alpha = 0.0;
  double intercept = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  double residual = 0.0;
  int used = 0;
  int excluded_zeros = 0;
};

/// theta reduced to (-pi, pi].
double reduce_angle(double theta);

}  // namespace airy
