"""Algebraic decay-order fitting for (scale, value) series."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class RateReport:
    """A (scale, value) series with its fitted log-log slope.

    fitted_order is the least-squares slope of log(value) against
    log(scale); it is NaN unless every value is strictly positive.
    """

    samples: tuple
    fitted_order: float
    r_squared: float
    residual_max: float
    degenerate: bool = False

    @property
    def max_value(self) -> float:
        vals = [v for _, v in self.samples]
        return max(vals) if vals else math.nan

    def rows(self):
        return [{"scale": s, "value": v} for s, v in self.samples]


def fit_decay(samples) -> RateReport:
    """Fit value ~ C * scale^order by least squares in log-log coordinates.

    Requires at least 4 samples spanning at least 3 octaves of scale.
    Nonpositive values make the fit meaningless; the report then carries
    NaN statistics and a degenerate flag instead of an error.
    """
    samples = [(float(s), float(v)) for s, v in samples]
    if len(samples) < 4:
        raise ConfigError(f"rate fit needs >= 4 samples, got {len(samples)}")
    scales = np.array([s for s, _ in samples])
    values = np.array([v for _, v in samples])
    if np.any(scales <= 0):
        raise ConfigError("scales must be positive")
    if scales.max() / scales.min() < 8.0 - 1e-9:
        raise ConfigError("rate fit needs scales spanning >= 3 octaves")
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        return RateReport(tuple(samples), math.nan, math.nan, math.nan, degenerate=True)
    lx, ly = np.log(scales), np.log(values)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return RateReport(
        samples=tuple(samples),
        fitted_order=float(slope),
        r_squared=r2,
        residual_max=float(np.max(np.abs(ly - pred))),
    )
