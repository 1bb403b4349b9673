"""Pointwise linear operator families and kernel condition checks.

Three families: Bernstein polynomials on [0, 1], the cardinal sine series
on the line, and generalized sampling series driven by time-limited
kernels. Kernel quality is quantified by the zeroth absolute moment, the
partition-of-unity defect, and the vanishing-moment (Strang-Fix-type)
defect; the shipped kernels are the centered cardinal B-splines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DEFAULT_QUAD, Domain, PointwiseFunction, QuadratureConfig, lp_norm
from .errors import ConfigError, DomainError
from .steklov import irwin_hall_density

_CHUNK = 2048


@dataclass(frozen=True)
class KernelSpec:
    """A time-limited kernel: continuous phi vanishing outside [T0, T1]."""

    phi: Callable
    support: tuple
    name: str = "kernel"

    def __post_init__(self):
        t0, t1 = self.support
        if not (t0 < t1):
            raise ConfigError(f"kernel support must satisfy T0 < T1, got {self.support}")

    @property
    def T(self) -> float:
        return max(abs(self.support[0]), abs(self.support[1]))

    def scaled(self, c: float) -> "KernelSpec":
        return KernelSpec(
            phi=lambda t, p=self.phi, c=c: c * np.asarray(p(t), dtype=float),
            support=self.support,
            name=f"{c}*{self.name}",
        )


def bspline_kernel(order: int) -> KernelSpec:
    """Centered cardinal B-spline of the given order as a sampling kernel."""
    if not (1 <= order <= 8):
        raise ConfigError(f"bspline kernel order must be in 1..8, got {order}")

    def phi(t, m=order):
        return irwin_hall_density(m, np.asarray(t, dtype=float) + m / 2.0)

    return KernelSpec(phi=phi, support=(-order / 2.0, order / 2.0), name=f"bspline{order}")


SHIPPED_KERNELS = {f"bspline{m}": m for m in range(1, 6)}


def kernel_by_name(name: str) -> KernelSpec:
    if name not in SHIPPED_KERNELS:
        raise ConfigError(f"unknown kernel {name!r}; shipped: {sorted(SHIPPED_KERNELS)}")
    return bspline_kernel(SHIPPED_KERNELS[name])


def _kernel_shift_matrix(kernel: KernelSpec, u: np.ndarray):
    """phi(u - k) for every contributing integer shift k, as a (u, k) matrix."""
    t0, t1 = kernel.support
    k_lo = math.floor(np.min(u) - t1) - 1
    k_hi = math.ceil(np.max(u) - t0) + 1
    ks = np.arange(k_lo, k_hi + 1, dtype=float)
    vals = np.asarray(kernel.phi(u[:, None] - ks[None, :]), dtype=float)
    return vals, ks


def partition_of_unity_defect(kernel: KernelSpec, u_grid: int = 2048) -> float:
    """Max deviation of the integer-shift sum of phi from 1 on a period."""
    u = np.linspace(0.0, 1.0, u_grid, endpoint=False)
    vals, _ = _kernel_shift_matrix(kernel, u)
    return float(np.max(np.abs(vals.sum(axis=1) - 1.0)))


def m0_moment(kernel: KernelSpec, u_grid: int = 2048) -> float:
    """Discrete absolute moment of order zero: sup_u of sum_k |phi(u-k)|.

    The shift sum has period one, so a dense grid on [0, 1) suffices.
    """
    u = np.linspace(0.0, 1.0, u_grid, endpoint=False)
    vals, _ = _kernel_shift_matrix(kernel, u)
    return float(np.max(np.abs(vals).sum(axis=1)))


def strang_fix_defect(kernel: KernelSpec, r: int, u_grid: int = 1024) -> float:
    """Max over u and j in 1..r-1 of |sum_k (k-u)^j phi(u-k)|.

    Zero (to machine precision) means the vanishing-moment condition of
    order r holds and grants the approximation rate W^-r.
    """
    if r < 1:
        raise DomainError(f"r must be >= 1, got {r}")
    if r == 1:
        return 0.0
    u = np.linspace(0.0, 1.0, u_grid, endpoint=False)
    vals, ks = _kernel_shift_matrix(kernel, u)
    worst = 0.0
    for j in range(1, r):
        moments = ((ks[None, :] - u[:, None]) ** j * vals).sum(axis=1)
        worst = max(worst, float(np.max(np.abs(moments))))
    return worst


def moment_condition_order(kernel: KernelSpec, r_max: int = 8, tol: float = 1e-10) -> int:
    """Largest r <= r_max whose vanishing-moment condition the kernel meets."""
    r = 1
    while r < r_max and strang_fix_defect(kernel, r + 1) <= tol:
        r += 1
    return r


def _chunked_eval(transform):
    def ev(x):
        arr = np.asarray(x, dtype=float)
        flat = np.atleast_1d(arr.ravel())
        parts = [transform(flat[i : i + _CHUNK]) for i in range(0, flat.size, _CHUNK)]
        out = np.concatenate(parts) if parts else np.zeros(0)
        return out.reshape(arr.shape) if arr.shape else float(out[0])

    return ev


def _bernstein_decasteljau(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate sum_k c_k * basis(n, k) at x by repeated convex combination.

    Never forms binomial coefficients, so it is overflow-free for any n.
    """
    b = np.broadcast_to(coeffs[:, None], (coeffs.size, x.size)).copy()
    one_minus = 1.0 - x
    for _ in range(coeffs.size - 1):
        b = b[:-1] * one_minus + b[1:] * x
    return b[0]


def bernstein_apply(f: PointwiseFunction, n: int) -> PointwiseFunction:
    """Bernstein polynomial of degree n built from f's values at k/n."""
    if n < 1:
        raise ConfigError(f"Bernstein degree must be >= 1, got {n}")
    nodes = np.arange(n + 1, dtype=float) / n
    coeffs = np.asarray(f.eval(nodes), dtype=float)

    def transform(x, coeffs=coeffs):
        return _bernstein_decasteljau(coeffs, x)

    return PointwiseFunction(
        eval=_chunked_eval(transform),
        name=f"bernstein[{f.name},n={n}]",
        regularity_tag="Sobolev",
        smoothness_order=8,
        window_hint=(0.0, 1.0),
    )


def bernstein_derivative(f: PointwiseFunction, n: int, s: int) -> PointwiseFunction:
    """s-th derivative of the Bernstein polynomial via forward differences.

    (n!/(n-s)!) sum_k diff^s f(k/n) basis(n-s, k); cross-check against finite
    differences of the applied polynomial lives in the test suite.
    """
    if s > n:
        raise DomainError(f"derivative order s={s} exceeds degree n={n}")
    if s < 0:
        raise DomainError("derivative order must be >= 0")
    if s == 0:
        return bernstein_apply(f, n)
    nodes = np.arange(n + 1, dtype=float) / n
    vals = np.asarray(f.eval(nodes), dtype=float)
    # np.diff on the node values IS the step-1/n forward difference
    coeffs = float(math.prod(range(n - s + 1, n + 1))) * np.diff(vals, s)

    def transform(x, coeffs=coeffs):
        return _bernstein_decasteljau(coeffs, x)

    return PointwiseFunction(
        eval=_chunked_eval(transform),
        name=f"bernstein[{f.name},n={n}]^({s})",
        regularity_tag="Sobolev",
        smoothness_order=8,
        window_hint=(0.0, 1.0),
    )


def exact_sinc(x: np.ndarray) -> np.ndarray:
    """Normalized sinc with exact zeros at nonzero integers."""
    arr = np.asarray(x, dtype=float)
    out = np.sinc(arr)
    integral = (arr == np.round(arr)) & (arr != 0.0)
    return np.where(integral, 0.0, out)


def shannon_apply(
    f: PointwiseFunction, W: float, trunc_terms: int = 4096
) -> PointwiseFunction:
    """Truncated cardinal series: sum of f(k/W) sinc(Wt - k) near each t.

    The window of 2*trunc_terms+1 terms is centered at round(W t); a probe
    of the truncation tail is reported in the result's metadata instead of
    being silently dropped.
    """
    if W <= 0:
        raise ConfigError(f"W must be positive, got {W}")
    if trunc_terms < 64:
        raise ConfigError(f"trunc_terms must be >= 64, got {trunc_terms}")
    offsets = np.arange(-trunc_terms, trunc_terms + 1, dtype=float)

    def partial(t, half):
        k0 = np.round(W * t)
        ks = k0[:, None] + offsets[None, offsets.size // 2 - half : offsets.size // 2 + half + 1]
        vals = np.asarray(f.eval(ks / W), dtype=float)
        return (vals * exact_sinc(W * t[:, None] - ks)).sum(axis=1)

    def transform(t):
        return partial(t, trunc_terms)

    plo, phi = f.window_hint or (-2.0, 2.0)
    # irrational shift keeps probe points off the lattice, where the
    # series interpolates exactly and truncation would be invisible
    probe = np.linspace(plo, phi, 23) + (phi - plo) * (math.sqrt(2.0) - 1.0) / 97.0
    tail_probe = float(np.max(np.abs(partial(probe, trunc_terms) - partial(probe, trunc_terms // 2))))
    return PointwiseFunction(
        eval=_chunked_eval(transform),
        name=f"shannon[{f.name},W={W}]",
        regularity_tag="bounded",
        window_hint=f.window_hint,
        meta={"trunc_terms": trunc_terms, "tail_probe": tail_probe},
    )


def generalized_sampling_apply(
    f: PointwiseFunction, W: float, kernel: KernelSpec
) -> PointwiseFunction:
    """Kernel sampling series: sum of f(k/W) phi(Wt - k), an exact finite sum."""
    if W <= 0:
        raise ConfigError(f"W must be positive, got {W}")
    t0, t1 = kernel.support
    width = int(math.floor(t1 - t0)) + 2

    def transform(t):
        k0 = np.ceil(W * t - t1) - 1
        ks = k0[:, None] + np.arange(width + 1)[None, :]
        vals = np.asarray(f.eval(ks / W), dtype=float)
        phis = np.asarray(kernel.phi(W * t[:, None] - ks), dtype=float)
        return (vals * phis).sum(axis=1)

    return PointwiseFunction(
        eval=_chunked_eval(transform),
        name=f"sampling[{kernel.name},{f.name},W={W}]",
        regularity_tag="bounded",
        window_hint=f.window_hint,
    )


@dataclass(frozen=True)
class OperatorFamily:
    """One scale of a pointwise linear operator family.

    apply maps a function to its image; derivative returns the s-th
    derivative of the image (closed form for Bernstein, finite differences
    of the applied function otherwise). interpolates marks families that
    reproduce lattice samples exactly.
    """

    name: str
    kind: str
    scale: float
    domain_kind: str
    apply: Callable
    derivative: Callable
    interpolates: bool
    params: dict = field(default_factory=dict, compare=False)


def _fd_derivative(fn: Callable, s: int, step: float) -> Callable:
    coeffs = [(-1.0) ** i * math.comb(s, i) for i in range(s + 1)]
    offs = [(s / 2.0 - i) * step for i in range(s + 1)]

    def dfn(x):
        arr = np.asarray(x, dtype=float)
        acc = np.zeros(arr.shape if arr.shape else ())
        for c, o in zip(coeffs, offs):
            acc = acc + c * np.asarray(fn(arr + o), dtype=float)
        out = acc / step**s
        return out if arr.shape else float(out)

    return dfn


def bernstein_family(n: int) -> OperatorFamily:
    return OperatorFamily(
        name=f"bernstein[n={n}]",
        kind="bernstein",
        scale=float(n),
        domain_kind="interval",
        apply=lambda f, n=n: bernstein_apply(f, n),
        derivative=lambda f, s, n=n: bernstein_derivative(f, n, s),
        interpolates=False,
    )


def shannon_family(W: float, trunc_terms: int = 4096) -> OperatorFamily:
    def deriv(f, s, W=W, trunc_terms=trunc_terms):
        applied = shannon_apply(f, W, trunc_terms)
        return PointwiseFunction(
            eval=_fd_derivative(applied.eval, s, 1.0 / (32.0 * W)),
            name=f"{applied.name}^({s})",
        )

    return OperatorFamily(
        name=f"shannon[W={W}]",
        kind="shannon",
        scale=float(W),
        domain_kind="line",
        apply=lambda f, W=W, K=trunc_terms: shannon_apply(f, W, K),
        derivative=deriv,
        interpolates=True,
        params={"trunc_terms": trunc_terms},
    )


def generalized_family(W: float, kernel: KernelSpec) -> OperatorFamily:
    def deriv(f, s, W=W, kernel=kernel):
        applied = generalized_sampling_apply(f, W, kernel)
        return PointwiseFunction(
            eval=_fd_derivative(applied.eval, s, 1.0 / (32.0 * W)),
            name=f"{applied.name}^({s})",
        )

    return OperatorFamily(
        name=f"sampling[{kernel.name},W={W}]",
        kind="generalized",
        scale=float(W),
        domain_kind="line",
        apply=lambda f, W=W, k=kernel: generalized_sampling_apply(f, W, k),
        derivative=deriv,
        interpolates=False,
        params={"kernel": kernel.name},
    )


def operator_error(
    f: PointwiseFunction,
    family: OperatorFamily,
    dom: Domain,
    p: float,
    q: QuadratureConfig = DEFAULT_QUAD,
) -> float:
    """L^p distance between f and its image under the family.

    The image is built from exact node values of f; the norm integrates the
    a.e.-consistent difference (f's representative minus the image).
    """
    if family.domain_kind != dom.kind:
        raise DomainError(
            f"operator family acts on {family.domain_kind} domains, got {dom.kind}"
        )
    g = family.apply(f)
    diff = f - g
    return lp_norm(diff, dom, p, q=q)
