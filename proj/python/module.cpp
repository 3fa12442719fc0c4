#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "airybvp/analysis.hpp"
#include "airybvp/periodic.hpp"
#include "airybvp/scenario.hpp"

namespace py = pybind11;
using airy::Complex;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

airy::Regularity regularity_from(const std::string& s) {
  for (auto r : {airy::Regularity::SmoothPeriodic, airy::Regularity::SmoothNonmatching,
                 airy::Regularity::BoundedVariation})
    if (s == airy::to_string(r)) return r;
  throw airy::InputError("python", "unknown regularity '" + s + "'");
}

airy::InitialDatum datum_from(const std::string& kind, const py::kwargs& params) {
  airy::DatumConfig d;
  d.kind = kind;
  for (const auto& [key, value] : params) {
    const auto k = key.cast<std::string>();
    if (k == "mode") d.mode = value.cast<int>();
    else if (k == "lo") d.lo = value.cast<double>();
    else if (k == "hi") d.hi = value.cast<double>();
    else if (k == "center") d.center = value.cast<double>();
    else if (k == "width") d.width = value.cast<double>();
    else if (k == "regularity") d.regularity = regularity_from(value.cast<std::string>());
    else throw airy::InputError("python", "unknown datum parameter '" + k + "'");
  }
  if (kind == "samples_file") throw airy::InputError("python", "use fourier_coeffs_from_samples for sampled data");
  return airy::make_datum(d, ".");
}

ComplexArray to_numpy(const airy::SpectralCoefficients& c) {
  ComplexArray out(static_cast<py::ssize_t>(c.size()));
  std::copy(c.entries().begin(), c.entries().end(), out.mutable_data());
  return out;
}

airy::SpectralCoefficients from_numpy(const ComplexArray& a, double shift) {
  if (a.ndim() != 1 || a.size() % 2 == 0) throw airy::InputError("python", "coefficients must be a 1-d array of odd length");
  std::vector<Complex> c(a.data(), a.data() + a.size());
  return airy::SpectralCoefficients(static_cast<int>(a.size() / 2), shift, std::move(c));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral decomposition solver for u_t + u_xxx = 0 on [0,1]";
  m.attr("revival_period") = airy::kRevivalPeriod;

  static py::exception<airy::InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<airy::ConfigError> config_error(m, "ConfigError", input_error.ptr());
  static py::exception<airy::Error> numerical_error(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const airy::ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const airy::InputError& e) {
      py::set_error(input_error, e.what());
    } catch (const airy::Error& e) {
      py::set_error(numerical_error, e.what());
    }
  });

  m.def("families", &airy::family_names);
  m.def("datum_kinds", &airy::datum_kinds);

  m.def(
      "fourier_coeffs",
      [](const std::string& kind, int N, double shift, const py::kwargs& params) {
        const auto f = datum_from(kind, params);
        return to_numpy(shift == 0.0 ? airy::fourier_coeffs(f, N) : airy::fourier_coeffs_shifted(f, N, shift));
      },
      py::arg("kind"), py::arg("N"), py::arg("shift") = 0.0,
      "Coefficients c_{-N..N} of a built-in datum; params as in the [datum] section.");

  m.def(
      "fourier_coeffs_from_samples",
      [](const ComplexArray& samples, int N, const std::string& regularity) {
        std::vector<Complex> s(samples.data(), samples.data() + samples.size());
        return to_numpy(airy::fourier_coeffs(airy::InitialDatum::sampled(std::move(s), regularity_from(regularity)), N));
      },
      py::arg("samples"), py::arg("N"), py::arg("regularity") = "bounded_variation");

  m.def(
      "eval_v",
      [](const ComplexArray& coeffs, const RealArray& x, const RealArray& t, double shift) {
        const auto c = from_numpy(coeffs, shift);
        ComplexArray out({t.size(), x.size()});
        auto o = out.mutable_unchecked<2>();
        for (py::ssize_t m = 0; m < t.size(); ++m)
          for (py::ssize_t i = 0; i < x.size(); ++i) o(m, i) = airy::eval_v(c, x.data()[i], t.data()[m]);
        return out;
      },
      py::arg("coeffs"), py::arg("x"), py::arg("t"), py::arg("shift") = 0.0,
      "Free evolution sum_n c_n e^{i k x + i k^3 t}; rows are times.");

  m.def(
      "decay_exponent",
      [](const RealArray& magnitudes, int n_lo, int n_hi) {
        const auto r = airy::decay_exponent({magnitudes.data(), static_cast<std::size_t>(magnitudes.size())}, n_lo, n_hi);
        py::dict d;
        d["alpha"] = r.alpha;
        d["intercept"] = r.intercept;
        d["residual"] = r.residual;
        d["used"] = r.used;
        d["excluded_zeros"] = r.excluded_zeros;
        return d;
      },
      py::arg("magnitudes"), py::arg("n_lo"), py::arg("n_hi"));

  m.def(
      "classify_time",
      [](double t, int q_max) -> py::object {
        const auto c = airy::classify_time(t, q_max);
        if (!c.rational) return py::none();
        return py::make_tuple(c.p, c.q);
      },
      py::arg("t"), py::arg("q_max") = 8, "(p, q) with t = (p/q) T_rev, or None.");

  m.def(
      "detect_jumps",
      [](const ComplexArray& profile, const RealArray& x, int window, double factor, double floor, bool periodic,
         int merge) {
        airy::JumpDetector det{window, factor, floor, periodic, merge};
        const auto jumps = airy::detect_jumps({profile.data(), static_cast<std::size_t>(profile.size())},
                                              {x.data(), static_cast<std::size_t>(x.size())}, det);
        std::vector<std::pair<double, double>> out;
        for (const auto& j : jumps) out.emplace_back(j.location, j.magnitude);
        return out;
      },
      py::arg("profile"), py::arg("x"), py::arg("window") = 1, py::arg("factor") = 5.0, py::arg("floor") = 0.05,
      py::arg("periodic") = false, py::arg("merge") = 0);

  m.def(
      "run_scenario",
      [](const std::filesystem::path& config, const std::filesystem::path& out_dir) {
        airy::Summary s;
        {
          py::gil_scoped_release release;
          s = airy::run_scenario_file(config, out_dir);
        }
        py::dict d;
        for (const auto& [k, v] : s) d[py::str(k)] = v;
        return d;
      },
      py::arg("config"), py::arg("out_dir"), "Run a config file; returns the summary as a dict of strings.");
}
