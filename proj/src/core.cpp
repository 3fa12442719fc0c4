#include "airybvp/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unsupported/Eigen/FFT>

namespace airy {

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::SmoothPeriodic: return "smooth_periodic";
    case Regularity::SmoothNonmatching: return "smooth_nonmatching";
    case Regularity::BoundedVariation: return "bounded_variation";
  }
  return "?";
}

SpectralCoefficients::SpectralCoefficients(int max_index, double shift, std::vector<Complex> entries,
                                           bool real_valued, Regularity regularity)
    : max_index_(max_index),
      shift_(shift),
      entries_(std::move(entries)),
      real_valued_(real_valued),
      regularity_(regularity) {
  if (max_index_ < 0 || entries_.size() != static_cast<std::size_t>(2 * max_index_ + 1))
    throw ContractViolation("core", "coefficient count must be 2N+1");
  if (real_valued_ && shift_ == 0.0) {
    double scale = 0.0;
    for (const auto& c : entries_) scale = std::max(scale, std::abs(c));
    for (int n = 1; n <= max_index_; ++n) {
      if (std::abs((*this)[-n] - std::conj((*this)[n])) > 1e-12 * std::max(scale, 1.0))
        throw ContractViolation("core", "real-valued coefficients must satisfy c_{-n} = conj(c_n)");
    }
  }
}

SpectralCoefficients SpectralCoefficients::zeros(int max_index, double shift) {
  return {max_index, shift, std::vector<Complex>(static_cast<std::size_t>(2 * max_index + 1))};
}

// ---------------------------------------------------------------------------

InitialDatum InitialDatum::closed_form(Function f, Regularity regularity, std::vector<double> breakpoints,
                                       bool real_valued) {
  if (!f) throw InputError("core", "closed-form datum needs a callable");
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                   [](double b) { return !(b > 0.0 && b < 1.0); }),
                    breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  InitialDatum d;
  d.f_ = std::move(f);
  d.breakpoints_ = std::move(breakpoints);
  d.regularity_ = regularity;
  d.real_valued_ = real_valued;
  return d;
}

InitialDatum InitialDatum::sampled(std::vector<Complex> samples, Regularity regularity) {
  const std::size_t m = samples.size();
  if (m < 2 || !std::has_single_bit(m))
    throw InputError("core", "sample count must be a power of two, got " + std::to_string(m));
  bool real = true;
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw InputError("core", "non-finite sample in initial datum");
    real = real && s.imag() == 0.0;
  }
  InitialDatum d;
  d.samples_ = std::move(samples);
  d.regularity_ = regularity;
  d.real_valued_ = real;
  Eigen::FFT<double> fft;
  fft.fwd(d.sample_dft_, d.samples_);
  for (auto& c : d.sample_dft_) c /= static_cast<double>(m);
  return d;
}

Complex InitialDatum::operator()(double x) const {
  if (!is_sampled()) return f_(x);
  const int m = static_cast<int>(samples_.size());
  const int half = m / 2;
  Complex sum = sample_dft_[0];
  for (int n = 1; n < half; ++n) {
    sum += sample_dft_[n] * std::polar(1.0, kTwoPi * n * x);
    sum += sample_dft_[m - n] * std::polar(1.0, -kTwoPi * n * x);
  }
  // split Nyquist term keeps the interpolant real for real samples
  sum += sample_dft_[half] * std::cos(kTwoPi * half * x);
  return sum;
}

namespace datum {

InitialDatum fourier_mode(int m) {
  return InitialDatum::closed_form([m](double x) { return std::polar(1.0, kTwoPi * m * x); },
                                   Regularity::SmoothPeriodic, {}, m == 0);
}

InitialDatum step(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) throw InputError("core", "step needs 0 <= a < b <= 1");
  return InitialDatum::closed_form([a, b](double x) { return Complex(x >= a && x < b ? 1.0 : 0.0); },
                                   Regularity::BoundedVariation, {a, b}, true);
}

InitialDatum bump(double center, double half_width) {
  if (!(half_width > 0.0 && center - half_width >= 0.0 && center + half_width <= 1.0))
    throw InputError("core", "bump support must lie in [0,1]");
  return InitialDatum::closed_form(
      [center, half_width](double x) {
        const double s = (x - center) / half_width;
        if (std::abs(s) >= 1.0) return Complex{};
        return Complex(std::exp(1.0 - 1.0 / (1.0 - s * s)));
      },
      Regularity::SmoothPeriodic, {center - half_width, center + half_width}, true);
}

InitialDatum gaussian(double center, double width) {
  if (!(width > 0.0)) throw InputError("core", "gaussian width must be positive");
  return InitialDatum::closed_form(
      [center, width](double x) {
        const double s = (x - center) / width;
        return Complex(std::exp(-s * s));
      },
      Regularity::SmoothNonmatching, {}, true);
}

InitialDatum poly() {
  return InitialDatum::closed_form(
      [](double x) { return Complex(x * x * (1.0 - x) * (1.0 - x)); }, Regularity::SmoothPeriodic, {},
      true);
}

}  // namespace datum

// ---------------------------------------------------------------------------

BoundarySpec::BoundarySpec(BoundaryFamily family, bool wellposedness_assumed)
    : family_(std::move(family)), wellposedness_assumed_(wellposedness_assumed) {
  auto finite = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  if (auto* m = std::get_if<MixedDirichlet>(&family_); m && !std::isfinite(m->gamma))
    throw InputError("core", "mixed: gamma must be finite");
  if (auto* p = std::get_if<PseudoPeriodic>(&family_)) {
    for (const auto& b : p->beta)
      if (!finite(b)) throw InputError("core", "pseudo_periodic: beta must be finite");
  }
  if (auto* q = std::get_if<QuasiPeriodic>(&family_); q && !std::isfinite(q->theta))
    throw InputError("core", "quasi_periodic: theta must be finite");
  if (auto* q = std::get_if<QuasiCoupled>(&family_);
      q && !(std::isfinite(q->theta) && finite(q->b1) && finite(q->b2)))
    throw InputError("core", "quasi_coupled: parameters must be finite");
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"periodic",       "dirichlet",      "mixed",
                                              "pseudo_periodic", "quasi_periodic", "quasi_coupled"};
  return names;
}

std::string BoundarySpec::name() const { return family_names()[family_.index()]; }

BoundaryRows BoundarySpec::rows() const {
  BoundaryRows r{};
  auto couple = [&r](std::array<Complex, 3> at0, std::array<Complex, 3> at1) {
    for (int j = 0; j < 3; ++j) {
      r[j][j] = at0[j];
      r[j][3 + j] = -at1[j];
    }
  };
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Periodic>) {
          couple({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
        } else if constexpr (std::is_same_v<T, DirichletType>) {
          r[0][0] = 1.0;  // u(0)
          r[1][3] = 1.0;  // u(1)
          r[2][4] = 1.0;  // u_x(1)
        } else if constexpr (std::is_same_v<T, MixedDirichlet>) {
          r[0][0] = 1.0;
          r[1][3] = 1.0;
          r[2][1] = 1.0;
          r[2][4] = -f.gamma;
        } else if constexpr (std::is_same_v<T, PseudoPeriodic>) {
          couple(f.beta, {1.0, 1.0, 1.0});
        } else if constexpr (std::is_same_v<T, QuasiPeriodic>) {
          const Complex e = std::polar(1.0, f.theta);
          couple({1.0, 1.0, 1.0}, {e, e, e});
        } else {
          const Complex e = std::polar(1.0, f.theta);
          couple({1.0, 1.0, 1.0}, {e, f.b1 * e, f.b2 * e});
        }
      },
      family_);
  return r;
}

bool operator==(const BoundarySpec& a, const BoundarySpec& b) {
  if (a.wellposedness_assumed_ != b.wellposedness_assumed_ || a.family_.index() != b.family_.index())
    return false;
  return std::visit(
      [&](const auto& fa) {
        using T = std::decay_t<decltype(fa)>;
        const auto& fb = std::get<T>(b.family_);
        if constexpr (std::is_same_v<T, MixedDirichlet>) return fa.gamma == fb.gamma;
        else if constexpr (std::is_same_v<T, PseudoPeriodic>) return fa.beta == fb.beta;
        else if constexpr (std::is_same_v<T, QuasiPeriodic>) return fa.theta == fb.theta;
        else if constexpr (std::is_same_v<T, QuasiCoupled>)
          return fa.theta == fb.theta && fa.b1 == fb.b1 && fa.b2 == fb.b2;
        else return true;
      },
      a.family_);
}

// ---------------------------------------------------------------------------

BoundaryTraces::BoundaryTraces(double dt, std::array<std::array<std::vector<Complex>, 3>, 2> series)
    : dt_(dt), series_(std::move(series)) {
  if (!(dt_ > 0.0)) throw ContractViolation("core", "trace time step must be positive");
  const std::size_t len = series_[0][0].size();
  for (const auto& side : series_)
    for (const auto& s : side)
      if (s.size() != len) throw ContractViolation("core", "trace series lengths differ");
  if (len < 2) throw ContractViolation("core", "traces need at least two time samples");
}

std::vector<Complex> BoundaryTraces::combination(const std::array<Complex, 3>& at0,
                                                 const std::array<Complex, 3>& at1) const {
  std::vector<Complex> out(size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    Complex s{};
    for (int j = 0; j < 3; ++j) {
      if (at0[j] != 0.0) s += at0[j] * series_[0][j][m];
      if (at1[j] != 0.0) s += at1[j] * series_[1][j][m];
    }
    out[m] = s;
  }
  return out;
}

SpaceGrid::SpaceGrid(int intervals) : intervals_(intervals) {
  if (intervals_ < 1) throw InputError("core", "space grid needs at least one interval");
}

std::vector<double> SpaceGrid::points() const {
  std::vector<double> xs(size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = (*this)[i];
  return xs;
}

std::vector<double> uniform_times(double dt, std::size_t count) {
  std::vector<double> ts(count);
  for (std::size_t m = 0; m < count; ++m) ts[m] = dt * static_cast<double>(m);
  return ts;
}

SpaceTimeField::SpaceTimeField(SpaceGrid grid, std::vector<double> times)
    : grid_(grid), times_(std::move(times)), values_(grid_.size() * times_.size()) {}

SpaceTimeField::SpaceTimeField(SpaceGrid grid, std::vector<double> times, std::vector<Complex> values)
    : grid_(grid), times_(std::move(times)), values_(std::move(values)) {
  if (values_.size() != grid_.size() * times_.size())
    throw ContractViolation("core", "field value count does not match its grid");
}

std::size_t SpaceTimeField::time_index(double t) const {
  for (std::size_t m = 0; m < times_.size(); ++m)
    if (std::abs(times_[m] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return m;
  throw InputError("core", "time " + std::to_string(t) + " is not on the field's time grid");
}

bool SpaceTimeField::same_layout(const SpaceTimeField& other) const {
  if (grid_.intervals() != other.grid_.intervals() || times_.size() != other.times_.size()) return false;
  // times built as m * dt and m * stride * (dt / stride) differ by rounding only
  for (std::size_t m = 0; m < times_.size(); ++m)
    if (std::abs(times_[m] - other.times_[m]) > 1e-12 * std::max(std::abs(times_[m]), std::abs(other.times_[m])))
      return false;
  return true;
}

double SpaceTimeField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!a.same_layout(b)) throw ContractViolation("core", "fields live on different grids");
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k)
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

double reduce_angle(double theta) {
  double r = theta - kTwoPi * std::round(theta / kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace airy
