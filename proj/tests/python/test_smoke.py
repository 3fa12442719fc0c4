import math
import pathlib

import numpy as np
import pytest

import airybvp

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_revival_period():
    assert airybvp.revival_period == pytest.approx(1.0 / (4.0 * math.pi**2))
    assert airybvp.classify_time(airybvp.revival_period / 3.0) == (1, 3)
    assert airybvp.classify_time(math.sqrt(2.0) * airybvp.revival_period) is None


def test_catalog():
    assert "pseudo_periodic" in airybvp.families()
    assert "samples_file" in airybvp.datum_kinds()


def test_single_mode_evolves_exactly():
    c = airybvp.fourier_coeffs("fourier_mode", 4, mode=1)
    assert c.shape == (9,)
    assert abs(c[5] - 1.0) < 1e-13
    x = np.linspace(0.0, 1.0, 17)
    t = np.array([0.0, 1e-3])
    u = airybvp.eval_v(c, x, t)
    k = 2.0 * math.pi
    exact = np.exp(1j * (k * x[None, :] + k**3 * t[:, None]))
    assert np.max(np.abs(u - exact)) < 1e-12


def test_step_decay_and_jumps():
    c = airybvp.fourier_coeffs("step", 256, lo=0.25, hi=0.75)
    fit = airybvp.decay_exponent(airybvp.magnitudes(c), 16, 256)
    # odd n only: even coefficients of a centred half-width step vanish
    assert fit["alpha"] == pytest.approx(1.0, abs=0.05)
    assert fit["excluded_zeros"] > 100

    x = np.arange(512) / 512.0
    u = airybvp.eval_v(c, x, np.array([airybvp.revival_period / 3.0]))[0]
    jumps = airybvp.detect_jumps(u, x, window=2, periodic=True)
    locations = sorted(j[0] for j in jumps)
    assert len(locations) == 2
    assert locations[0] == pytest.approx(5.0 / 12.0, abs=2.0 / 512.0)
    assert locations[1] == pytest.approx(11.0 / 12.0, abs=2.0 / 512.0)


def test_samples_match_closed_form():
    x = np.arange(64) / 64.0
    c = airybvp.fourier_coeffs_from_samples(np.exp(2j * math.pi * 3 * x), 8, "smooth_periodic")
    assert abs(c[8 + 3] - 1.0) < 1e-14
    with pytest.raises(airybvp.NumericalError):
        airybvp.fourier_coeffs_from_samples(np.ones(16), 8)


def test_errors_map_to_python_exceptions():
    with pytest.raises(airybvp.InputError):
        airybvp.fourier_coeffs("step", 8, lo=0.5, hi=0.5)
    with pytest.raises(ValueError):
        airybvp.fourier_coeffs("poly", 8, colour="red")


def test_run_scenario(tmp_path):
    summary = airybvp.run_scenario(ROOT / "scenarios" / "periodic_mode.ini", tmp_path)
    assert summary["family"] == "periodic"
    assert float(summary["decomposition_error"]) < 1e-5
    for name in ("field_u.csv", "coefficients.csv", "decay_report.csv", "jumps.csv", "summary.txt"):
        assert (tmp_path / name).exists()
    with pytest.raises(airybvp.ConfigError):
        airybvp.run_scenario(ROOT / "tests" / "data" / "bad_family.ini", tmp_path)
