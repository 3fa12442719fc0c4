#pragma once

#include <array>
#include <memory>

#include "airybvp/core.hpp"

namespace airy {

/// A scalar function of time on [0, t_max]: closed form, uniform samples
/// (piecewise-cubic interpolant), or a finite exponential sum.
class TimeFunction {
 public:
  enum class Kind { ClosedForm, Sampled, ExponentialSum };

  static TimeFunction closed_form(std::function<Complex(double)> h, double t_max);
  /// Samples h(m dt), m = 0..M-1, M >= 4.
  static TimeFunction sampled(double dt, std::vector<Complex> samples);
  /// h(s) = sum_m a_m e^{i w_m s}, defined for all s >= 0.
  static TimeFunction exponential_sum(std::vector<Complex> amplitudes, std::vector<double> frequencies);

  Kind kind() const { return kind_; }
  double t_max() const { return t_max_; }
  Complex operator()(double s) const;

  TimeFunction scaled(Complex factor) const;

  // representation access, used by the integrators
  double dt() const { return dt_; }
  const std::vector<Complex>& samples() const { return samples_; }
  const std::vector<std::array<Complex, 4>>& cubics() const { return cubics_; }
  const std::vector<Complex>& amplitudes() const { return samples_; }
  const std::vector<double>& frequencies() const { return frequencies_; }
  const std::function<Complex(double)>& function() const { return h_; }

 private:
  Kind kind_ = Kind::ClosedForm;
  double t_max_ = 0.0;
  std::function<Complex(double)> h_;
  double dt_ = 0.0;
  std::vector<Complex> samples_;
  std::vector<std::array<Complex, 4>> cubics_;  // local monomial coefficients per interval
  std::vector<double> frequencies_;
};

/// |k^3| t at or below which closed-form moments use Gauss–Kronrod instead of Filon.
inline constexpr double kFilonThreshold = 50.0;

/// mu_m(sigma) = int_{-1}^{1} xi^m e^{-i sigma xi} d xi, m = 0..6.
std::array<Complex, 7> monomial_moments(double sigma);

/// int_a^b e^{-i omega s} h(s) ds
Complex oscillatory_integral(const TimeFunction& h, double omega, double a, double b);

/// H(k, t) = int_0^t e^{-i k^3 s} h(s) ds
Complex moment(const TimeFunction& h, double k, double t);

std::vector<Complex> moment_batch(const TimeFunction& h, std::span<const double> ks, double t);

/// H(k, t_m) for ascending t_m >= 0.
std::vector<Complex> cumulative_moments(const TimeFunction& h, double k, std::span<const double> times);

/// F(k,t) (endpoint 0) or G(k,t) (endpoint 1):
/// int_0^t e^{-i k^3 s} [k^2 u - i k u_x - u_xx](endpoint, s) ds
Complex endpoint_moment(const BoundaryTraces& traces, int endpoint, double k, double t);

}  // namespace airy
