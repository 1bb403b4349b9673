"""Iterated Steklov-type averages on the line and on intervals.

The r-fold mean is reduced exactly to a single integral against the
Irwin-Hall density (the law of a sum of r independent uniforms), which
keeps the cost one-dimensional for every r. A literal nested-quadrature
oracle is kept alongside, solely to validate the reduction at small r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Domain, PointwiseFunction
from .errors import CapabilityError, DomainError, InternalError

_GL3_NODES = np.array([-math.sqrt(3.0 / 5.0), 0.0, math.sqrt(3.0 / 5.0)])
_GL3_WEIGHTS = np.array([5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])

_CHUNK = 4096


@dataclass(frozen=True)
class SteklovSpec:
    """Averaging radius delta, fold count r, and 1-D quadrature resolution."""

    delta: float
    r: int
    u_grid: int = 256

    def __post_init__(self):
        if self.delta <= 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if self.r < 1:
            raise DomainError(f"r must be a positive integer, got {self.r}")
        if self.u_grid < 8:
            raise DomainError(f"u_grid must be >= 8, got {self.u_grid}")

    def validate(self, dom: Domain):
        if not dom.is_line and self.delta > (dom.hi - dom.lo) / self.r + 1e-12:
            raise DomainError(
                f"delta={self.delta} exceeds (b-a)/r={(dom.hi - dom.lo) / self.r} on the interval"
            )


def irwin_hall_density(r: int, u) -> np.ndarray:
    """Density at u of the sum of r independent Uniform(0,1) variables.

    Piecewise polynomial of degree r-1 supported on [0, r].
    """
    arr = np.asarray(u, dtype=float)
    acc = np.zeros(arr.shape if arr.shape else ())
    if r < 1:
        return acc
    for k in range(r + 1):
        t = arr - k
        if r == 1:
            term = (t > 0).astype(float)
        else:
            term = np.where(t > 0, t, 0.0) ** (r - 1)
        acc = acc + (-1.0) ** k * math.comb(r, k) * term
    acc = acc / math.factorial(r - 1)
    # half-open support (0, r]: keeps the order-1 box summing to one at
    # half-integer shifts; higher orders vanish at both endpoints anyway
    acc = np.where((arr > 0) & (arr <= r), acc, 0.0)
    return acc if arr.shape else float(acc)


def _gl3_composite(lo: float, hi: float, cells: int):
    w = (hi - lo) / cells
    centers = lo + w * (np.arange(cells) + 0.5)
    nodes = (centers[:, None] + 0.5 * w * _GL3_NODES[None, :]).ravel()
    weights = np.tile(0.5 * w * _GL3_WEIGHTS, cells)
    return nodes, weights


def _reduced_sum(fq, x: np.ndarray, spec: SteklovSpec, lam: np.ndarray | None) -> np.ndarray:
    """Evaluate the Irwin-Hall-reduced m-sum at the points x.

    lam is None on the line; on [a, b] it carries (x-a)/(b-a), which shifts
    every argument so the average never leaves the interval.
    """
    r, delta = spec.r, spec.delta
    u, w = _gl3_composite(0.0, float(r), r * spec.u_grid)
    kernel_w = w * irwin_hall_density(r, u)
    out = np.zeros_like(x)
    for m in range(1, r + 1):
        if lam is None:
            args = x[:, None] + (m / r) * delta * u[None, :]
        else:
            args = x[:, None] + m * (delta * u[None, :] / r - (lam * delta)[:, None])
        coeff = (-1.0) ** (m + 1) * math.comb(r, m)
        out = out + coeff * (np.asarray(fq(args), dtype=float) @ kernel_w)
    return out


def _chunked(transform):
    def ev(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr.ravel())
        parts = [transform(flat[i : i + _CHUNK]) for i in range(0, flat.size, _CHUNK)]
        out = np.concatenate(parts) if parts else np.zeros(0)
        return out.reshape(arr.shape) if arr.shape else float(out[0])

    return ev


def steklov_line(f: PointwiseFunction, dom: Domain, spec: SteklovSpec) -> PointwiseFunction:
    """The r-fold Steklov average of f on the line."""
    if not dom.is_line:
        raise DomainError("steklov_line requires a line domain")
    spec.validate(dom)
    fq = f.quad_rep

    def transform(xf, fq=fq, spec=spec):
        return _reduced_sum(fq, xf, spec, None)

    return PointwiseFunction(
        eval=_chunked(transform),
        name=f"steklov[{f.name},d={spec.delta},r={spec.r}]",
        regularity_tag="Sobolev",
        smoothness_order=spec.r,
        window_hint=f.window_hint,
    )


def steklov_interval(f: PointwiseFunction, dom: Domain, spec: SteklovSpec) -> PointwiseFunction:
    """The interval form: arguments are shifted to stay inside [a, b]."""
    if dom.is_line:
        raise DomainError("steklov_interval requires an interval domain")
    spec.validate(dom)
    a, b = dom.lo, dom.hi
    fq = f.quad_rep

    def guarded(args, fq=fq, a=a, b=b):
        excess = max(float(np.max(args - b, initial=0.0)), float(np.max(a - args, initial=0.0)))
        if excess > 1e-9:
            raise InternalError(f"Steklov argument left [{a}, {b}] by {excess:.3e}")
        return fq(np.clip(args, a, b))

    def transform(xf, spec=spec, a=a, b=b):
        lam = (xf - a) / (b - a)
        return _reduced_sum(guarded, xf, spec, lam)

    return PointwiseFunction(
        eval=_chunked(transform),
        name=f"steklov[{f.name},d={spec.delta},r={spec.r}]",
        regularity_tag="Sobolev",
        smoothness_order=spec.r,
        window_hint=(a, b),
    )


def steklov_average(f: PointwiseFunction, dom: Domain, spec: SteklovSpec) -> PointwiseFunction:
    return steklov_line(f, dom, spec) if dom.is_line else steklov_interval(f, dom, spec)


def steklov_oracle_nested(
    f: PointwiseFunction, dom: Domain, spec: SteklovSpec, cells_per_dim: int = 16
) -> PointwiseFunction:
    """Literal r-fold nested quadrature; exists to validate the reduction."""
    if spec.r > 3:
        raise CapabilityError("nested oracle supports r <= 3 only (cost grows as grid^r)")
    spec.validate(dom)
    r, delta = spec.r, spec.delta
    t, w = _gl3_composite(0.0, delta, cells_per_dim)
    grids = np.meshgrid(*([t] * r), indexing="ij")
    tsum = sum(grids).ravel()
    wprod = np.ones(1)
    for _ in range(r):
        wprod = np.outer(wprod, w).ravel()
    fq = f.quad_rep
    a, b = dom.lo, dom.hi
    interval = not dom.is_line

    def transform(xf):
        out = np.zeros_like(xf)
        lam = (xf - a) / (b - a) if interval else None
        for m in range(1, r + 1):
            if interval:
                args = xf[:, None] + m * (tsum[None, :] / r - (lam * delta)[:, None])
                args = np.clip(args, a, b)
            else:
                args = xf[:, None] + (m / r) * tsum[None, :]
            coeff = (-1.0) ** (r - m + 1) * math.comb(r, m)
            out = out + coeff * (np.asarray(fq(args), dtype=float) @ wprod)
        return out * (-1.0) ** r / delta**r  # the (-delta)^(-r) prefactor

    return PointwiseFunction(
        eval=_chunked(transform),
        name=f"steklov_nested[{f.name}]",
        regularity_tag="Sobolev",
        smoothness_order=spec.r,
    )


def steklov_derivative(
    f: PointwiseFunction, dom: Domain, spec: SteklovSpec, s: int
) -> PointwiseFunction:
    """s-th derivative of the Steklov average via central differences.

    Step delta/64. The average lies in W^r_p, which keeps the stencil
    stable; near interval endpoints the stencil center is shifted inward.
    """
    if s > spec.r:
        raise DomainError(f"derivative order s={s} exceeds fold count r={spec.r}")
    base = steklov_average(f, dom, spec)
    if s == 0:
        return base
    step = spec.delta / 64.0
    coeffs = np.array([(-1.0) ** i * math.comb(s, i) for i in range(s + 1)])
    offsets = np.array([s / 2.0 - i for i in range(s + 1)]) * step

    def transform(xf):
        centers = xf
        if not dom.is_line:
            lo, hi = dom.lo + s * step / 2.0, dom.hi - s * step / 2.0
            centers = np.clip(xf, lo, hi)
        acc = np.zeros_like(xf)
        for c, off in zip(coeffs, offsets):
            acc = acc + c * np.asarray(base.eval(centers + off), dtype=float)
        return acc / step**s

    return PointwiseFunction(
        eval=_chunked(transform),
        name=f"{base.name}^({s})",
        regularity_tag="Sobolev",
        smoothness_order=max(spec.r - s, 0) or None,
        window_hint=base.window_hint,
    )
