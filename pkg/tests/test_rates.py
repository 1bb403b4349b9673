import math

import numpy as np
import pytest

from smoothness_lab import ConfigError, fit_decay


def test_exact_power_law_recovered():
    samples = [(s, s**-2.0) for s in (8.0, 16.0, 32.0, 64.0, 128.0)]
    rep = fit_decay(samples)
    assert rep.fitted_order == pytest.approx(-2.0, abs=1e-12)
    assert rep.r_squared == pytest.approx(1.0, abs=1e-12)
    assert rep.residual_max < 1e-12


def test_constant_series_has_zero_order():
    rep = fit_decay([(s, 3.7) for s in (8.0, 16.0, 32.0, 64.0)])
    assert rep.fitted_order == pytest.approx(0.0, abs=1e-12)


def test_fit_requires_enough_samples():
    with pytest.raises(ConfigError):
        fit_decay([(8.0, 1.0), (16.0, 0.5), (32.0, 0.25)])


def test_fit_requires_three_octaves():
    with pytest.raises(ConfigError):
        fit_decay([(8.0, 1.0), (10.0, 0.9), (12.0, 0.8), (14.0, 0.7)])


def test_nonpositive_values_degenerate():
    rep = fit_decay([(8.0, 1.0), (16.0, 0.0), (32.0, 0.25), (64.0, 0.1)])
    assert rep.degenerate
    assert math.isnan(rep.fitted_order)


def test_noisy_power_law_diagnostics():
    rng = np.random.default_rng(3)
    scales = np.array([8.0, 16.0, 32.0, 64.0, 128.0, 256.0])
    values = 5.0 * scales**-1.5 * np.exp(rng.normal(0, 0.02, scales.size))
    rep = fit_decay(list(zip(scales, values)))
    assert rep.fitted_order == pytest.approx(-1.5, abs=0.05)
    assert rep.r_squared > 0.99
    assert rep.max_value == pytest.approx(max(values))
