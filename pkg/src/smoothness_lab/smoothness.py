"""Finite differences and the continuous smoothness measures.

Covers the integral modulus (sup over step sizes of difference norms), the
pointwise local modulus, the averaged modulus (L^p norm of the local
modulus), and the step-up ratio table used to test whether consecutive
moduli are comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_QUAD, Domain, PointwiseFunction, QuadratureConfig, lp_norm
from .errors import CapabilityError, DomainError
from .rates import RateReport, fit_decay


@dataclass(frozen=True)
class ModulusRequest:
    """Order, step bound, norm index, and grid resolutions for a modulus."""

    order: int
    delta: float
    p: float
    h_grid_size: int = 64
    t_grid_size: int = 129

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"order must be >= 0, got {self.order}")
        if self.delta < 0:
            raise DomainError(f"delta must be >= 0, got {self.delta}")
        if not (self.p >= 1):
            raise DomainError(f"p must satisfy p >= 1, got {self.p}")
        if self.h_grid_size < 1 or self.t_grid_size < 3:
            raise DomainError("grid sizes too small")

    def validate(self, dom: Domain):
        if not dom.is_line and self.order >= 1:
            if self.delta > (dom.hi - dom.lo) / self.order + 1e-12:
                raise DomainError(
                    f"delta={self.delta} exceeds (b-a)/order={(dom.hi - dom.lo) / self.order}"
                )


def finite_difference(f: PointwiseFunction, x, h: float, r: int, dom: Domain = None):
    """r-th forward difference of f at x with step h (alternating binomial sum)."""
    if h <= 0:
        raise DomainError(f"step h must be positive, got {h}")
    if r < 1:
        raise DomainError(f"difference order must be >= 1, got {r}")
    arr = np.asarray(x, dtype=float)
    if dom is not None and not dom.is_line:
        if np.any(arr < dom.lo - 1e-12) or np.any(arr + r * h > dom.hi + 1e-12):
            raise DomainError("x + r*h leaves the interval")
    acc = np.zeros(arr.shape if arr.shape else ())
    for k in range(r + 1):
        acc = acc + (-1.0) ** (r - k) * math.comb(r, k) * np.asarray(f.eval(arr + k * h), dtype=float)
    return acc if arr.shape else float(acc)


def _difference_norm(f, dom, h, r, p, q):
    """L^p norm over A_rh of the r-th difference, honoring ae_rep."""
    if dom.is_line:
        sub = None
    else:
        hi = dom.hi - r * h
        if hi <= dom.lo:
            return 0.0
        sub = (dom.lo, hi)

    def ev(x):
        acc = 0.0
        for k in range(r + 1):
            acc = acc + (-1.0) ** (r - k) * math.comb(r, k) * np.asarray(
                f.quad_rep(np.asarray(x, dtype=float) + k * h), dtype=float
            )
        return acc

    g = PointwiseFunction(eval=ev, name=f"diff[{f.name}]")
    return lp_norm(g, dom, p, sub=sub, q=q)


def modulus_of_smoothness(
    f: PointwiseFunction,
    dom: Domain,
    req: ModulusRequest,
    q: QuadratureConfig = DEFAULT_QUAD,
) -> float:
    """Modulus of order req.order at step bound req.delta in L^p.

    The sup over steps is discretized on a linear grid of req.h_grid_size
    points in (0, delta] that always contains the endpoint. Order 0 returns
    the plain norm; p = inf is served by the windowed-oscillation profile,
    which makes the comparison against the averaged modulus structural.
    """
    req.validate(dom)
    if req.order == 0:
        if math.isinf(req.p):
            grid = np.linspace(dom.lo, dom.hi, 4097)
            return float(np.max(np.abs(np.asarray(f.eval(grid), dtype=float))))
        return lp_norm(f, dom, req.p, q=q)
    if req.delta == 0.0:
        return 0.0
    if math.isinf(req.p):
        xs = np.linspace(dom.lo, dom.hi, req.t_grid_size)
        prof = _local_modulus_profile(f, dom, req.order, req.delta, xs, req.t_grid_size)
        return float(np.max(prof))
    hs = np.linspace(req.delta / req.h_grid_size, req.delta, req.h_grid_size)
    best = 0.0
    for h in hs:
        best = max(best, _difference_norm(f, dom, float(h), req.order, req.p, q))
    return best


def _local_modulus_brute(f, k, lo, hi, grid):
    if hi - lo <= 0:
        return 0.0
    t = np.linspace(lo, hi, grid)[:, None]
    hmax = (hi - t) / k
    h = hmax * np.linspace(0.0, 1.0, grid)[None, :]
    acc = np.zeros_like(h)
    for j in range(k + 1):
        acc = acc + (-1.0) ** (k - j) * math.comb(k, j) * np.asarray(
            f.eval(t + j * h), dtype=float
        )
    return float(np.max(np.abs(acc)))


def local_modulus(
    f: PointwiseFunction,
    dom: Domain,
    k: int,
    x: float,
    delta: float,
    t_grid_size: int = 129,
) -> float:
    """Oscillation of the k-th difference confined to a window around x.

    Delegates to the function's exact oracle when it has one; otherwise
    takes a sup over a (t, h) product grid inside the window, including the
    full-span configuration.
    """
    if k < 1:
        raise DomainError(f"local modulus needs k >= 1, got {k}")
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    if delta == 0.0:
        return 0.0
    if not dom.is_line and delta > (dom.hi - dom.lo) / k + 1e-12:
        raise DomainError(f"delta={delta} exceeds (b-a)/k")
    if f.osc_oracle is not None:
        return float(f.osc_oracle(k, x, delta))
    lo, hi = x - k * delta / 2.0, x + k * delta / 2.0
    if not dom.is_line:
        lo, hi = max(lo, dom.lo), min(hi, dom.hi)
    return _local_modulus_brute(f, k, lo, hi, t_grid_size)


def _local_modulus_profile(f, dom, k, delta, xs, grid):
    return np.array([local_modulus(f, dom, k, float(x), delta, grid) for x in xs])


def tau_modulus(
    f: PointwiseFunction,
    dom: Domain,
    k: int,
    delta: float,
    p: float,
    t_grid_size: int = 129,
) -> float:
    """Averaged modulus: the L^p norm of the local-modulus profile.

    The profile is integrated with the trapezoid rule on the plain t grid;
    the local modulus is the object of interest pointwise, so no jitter and
    no a.e. substitution apply here.
    """
    if not (np.isfinite(p) and p >= 1):
        raise DomainError(f"tau modulus requires finite p >= 1, got {p}")
    if not f.is_bounded and f.osc_oracle is None:
        raise CapabilityError(
            f"{f.name} is unbounded and has no oscillation oracle; its averaged modulus "
            "cannot be computed from grid values"
        )
    if delta == 0.0:
        return 0.0
    if not dom.is_line and delta > (dom.hi - dom.lo) / k + 1e-12:
        raise DomainError(f"delta={delta} exceeds (b-a)/k")
    xs = np.linspace(dom.lo, dom.hi, t_grid_size)
    prof = _local_modulus_profile(f, dom, k, delta, xs, t_grid_size)
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    return float(trapezoid(prof**p, xs) ** (1.0 / p))


def modulus_ratio(
    f: PointwiseFunction,
    dom: Domain,
    s: int,
    delta_grid,
    p: float,
    q: QuadratureConfig = DEFAULT_QUAD,
    tiny: float = 1e-13,
) -> RateReport:
    """Table of omega_s / omega_{s+1} over a delta grid.

    A bounded table is the hypothesis under which the rate of a matching
    interpolation-type process is two-sidedly comparable to the modulus;
    smooth functions fail it (the ratio grows like 1/delta) and that is
    reported, not an error. Vanishing denominators flag the sample as
    infinite; an all-degenerate table (both moduli zero) is flagged as such.
    """
    samples = []
    for d in delta_grid:
        num = modulus_of_smoothness(f, dom, ModulusRequest(s, float(d), p), q)
        den = modulus_of_smoothness(f, dom, ModulusRequest(s + 1, float(d), p), q)
        if den <= tiny:
            ratio = math.inf if num > tiny else math.nan
        else:
            ratio = num / den
        samples.append((float(d), ratio))
    finite = [v for _, v in samples if np.isfinite(v) and v > 0]
    degenerate = not finite
    if len(finite) == len(samples) and len(samples) >= 4:
        report = fit_decay(samples)
    else:
        report = RateReport(
            samples=tuple(samples),
            fitted_order=math.nan,
            r_squared=math.nan,
            residual_max=math.nan,
            degenerate=degenerate,
        )
    return report
