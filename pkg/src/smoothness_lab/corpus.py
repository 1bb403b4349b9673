"""Built-in test functions, including the pathological ones.

Every member ships an exact pointwise rule. The two rational indicators
additionally carry an a.e. representative (identically zero) and an exact
oscillation oracle, since no finite grid can see their sup-type moduli.
The corpus is addressable by string id plus a parameter map, which is what
the CLI config files use.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .core import PointwiseFunction
from .errors import ConfigError
from .steklov import irwin_hall_density

RATIONAL_DENOMINATOR_CAP = 10**6
RATIONAL_ABS_TOL = 1e-12
# Quality gate: accept p/q only when q^2*|x - p/q| is far below the ~1 level
# that generic irrationals attain along their convergents. Without it, any
# float within 1e-12 of some p/q with q <= 1e6 (a set of measure ~0.6 per
# unit interval) would pass, including sqrt(2)/2.
RATIONAL_QUALITY = 1e-6


def detect_rational(
    x: float,
    max_denominator: int = RATIONAL_DENOMINATOR_CAP,
    tol: float = RATIONAL_ABS_TOL,
    quality: float = RATIONAL_QUALITY,
) -> Optional[tuple]:
    """Return (p, q) in lowest terms if the float x encodes the rational p/q.

    Continued-fraction expansion with a denominator cap; a convergent is
    accepted only if it is within tol of x and approximates x far better
    (q^2 * err <= quality) than convergents of generic irrationals do.
    """
    if not np.isfinite(x):
        return None
    sign = -1 if x < 0 else 1
    y = abs(float(x))
    if y > 1e15:
        return None
    a = math.floor(y)
    p0, q0, p1, q1 = 1, 0, a, 1
    frac = y - a
    for _ in range(64):
        err = abs(y - p1 / q1)
        if err <= tol and q1 * q1 * err <= quality:
            g = math.gcd(p1, q1)
            return (sign * p1 // g, q1 // g)
        if frac <= 1e-18:
            break
        inv = 1.0 / frac
        a = math.floor(inv)
        frac = inv - a
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_denominator:
            break
    return None


def _scalar_map(fn):
    """Lift a scalar float->float rule to the scalar/ndarray convention."""

    def ev(x, fn=fn):
        arr = np.asarray(x, dtype=float)
        if arr.shape == ():
            return fn(float(arr))
        flat = np.fromiter((fn(float(v)) for v in arr.ravel()), dtype=float, count=arr.size)
        return flat.reshape(arr.shape)

    return ev


def _zero(x):
    arr = np.asarray(x, dtype=float)
    return np.zeros(arr.shape) if arr.shape else 0.0


def dirichlet() -> PointwiseFunction:
    """Indicator of the rationals: 1 on Q, 0 elsewhere; zero a.e."""

    def point(v: float) -> float:
        return 1.0 if detect_rational(v) is not None else 0.0

    def osc(k, x, delta):
        # Two committed nodes force a rational step, hence all nodes rational
        # and the difference collapses; the sup is the largest single weight.
        return float(math.comb(k, k // 2)) if delta > 0 else 0.0

    return PointwiseFunction(
        eval=_scalar_map(point),
        name="dirichlet",
        ae_rep=_zero,
        osc_oracle=osc,
        regularity_tag="pathological",
        window_hint=(0.0, 1.0),
    )


def even_denominator() -> PointwiseFunction:
    """1 at rationals whose reduced denominator is even, 0 elsewhere."""

    def point(v: float) -> float:
        pq = detect_rational(v)
        return 1.0 if pq is not None and pq[1] % 2 == 0 else 0.0

    def osc(k, x, delta):
        # Rational nodes with prescribed denominator parity are dense, so any
        # sign pattern of the k-th difference is realizable inside the window.
        return float(2 ** (k - 1)) if delta > 0 else 0.0

    return PointwiseFunction(
        eval=_scalar_map(point),
        name="even_denominator",
        ae_rep=_zero,
        osc_oracle=osc,
        regularity_tag="pathological",
        window_hint=(0.0, 1.0),
    )


def power_singularity(alpha: float) -> PointwiseFunction:
    """x^(-alpha) on (0, 1), zero elsewhere; unbounded, in L^p for p < 1/alpha."""
    if not (0.0 < alpha < 1.0):
        raise ConfigError(f"power_singularity needs alpha in (0, 1), got {alpha}")

    def ev(x, a=alpha):
        arr = np.asarray(x, dtype=float)
        inside = (arr > 0.0) & (arr < 1.0)
        out = np.zeros(arr.shape if arr.shape else ())
        vals = np.power(np.where(inside, arr, 1.0), -a)
        out = np.where(inside, vals, 0.0)
        return out if arr.shape else float(out)

    return PointwiseFunction(
        eval=ev,
        name=f"power_singularity[{alpha}]",
        regularity_tag="Lp",
        window_hint=(-1.0, 2.0),
    )


def bspline(order: int) -> PointwiseFunction:
    """Centered cardinal B-spline of the given order (support width = order)."""
    if not (1 <= order <= 8):
        raise ConfigError(f"bspline order must be in 1..8, got {order}")

    def ev(x, m=order):
        arr = np.asarray(x, dtype=float)
        out = irwin_hall_density(m, arr + m / 2.0)
        return out if arr.shape else float(out)

    # beta_m' = beta_{m-1}(.+1/2) - beta_{m-1}(.-1/2); iterate for higher orders.
    def make_deriv(k, m=order):
        def dk(x, k=k, m=m):
            arr = np.asarray(x, dtype=float)
            acc = np.zeros(arr.shape if arr.shape else ())
            for j in range(k + 1):
                shift = k / 2.0 - j
                acc = acc + (-1) ** j * math.comb(k, j) * irwin_hall_density(
                    m - k, arr + shift + (m - k) / 2.0
                )
            return acc if arr.shape else float(acc)

        return dk

    derivs = tuple(make_deriv(k) for k in range(1, order))
    return PointwiseFunction(
        eval=ev,
        name=f"bspline[{order}]",
        deriv=derivs,
        regularity_tag="Sobolev",
        smoothness_order=max(order - 1, 0) or None,
        window_hint=(-order / 2.0 - 1.0, order / 2.0 + 1.0),
    )


def gaussian_bump(center: float = 0.0, width: float = 1.0) -> PointwiseFunction:
    """exp(-((x-c)/w)^2 / 2); smooth with four closed-form derivatives."""
    if width <= 0:
        raise ConfigError("gaussian_bump width must be positive")
    c, w = float(center), float(width)

    def base(x):
        u = (np.asarray(x, dtype=float) - c) / w
        return np.exp(-0.5 * u * u)

    # probabilists' Hermite polynomials give f^(k) = (-1)^k He_k(u) f / w^k
    hermite = (
        lambda u: u,
        lambda u: u * u - 1.0,
        lambda u: u**3 - 3.0 * u,
        lambda u: u**4 - 6.0 * u * u + 3.0,
    )

    def make_deriv(k):
        def dk(x, k=k):
            arr = np.asarray(x, dtype=float)
            u = (arr - c) / w
            val = (-1.0) ** k * hermite[k - 1](u) * np.exp(-0.5 * u * u) / w**k
            return val if arr.shape else float(val)

        return dk

    def ev(x):
        arr = np.asarray(x, dtype=float)
        val = base(arr)
        return val if arr.shape else float(val)

    return PointwiseFunction(
        eval=ev,
        name=f"gaussian_bump[{c},{w}]" if (c, w) != (0.0, 1.0) else "gaussian_bump",
        deriv=tuple(make_deriv(k) for k in range(1, 5)),
        regularity_tag="Sobolev",
        smoothness_order=8,
        window_hint=(c - 12.0 * w, c + 12.0 * w),
    )


def poly(coeffs) -> PointwiseFunction:
    """Polynomial with the given coefficients, lowest degree first."""
    coeffs = tuple(float(c) for c in coeffs)
    if not coeffs:
        raise ConfigError("poly needs at least one coefficient")

    def make(cs):
        def ev(x, cs=np.asarray(cs)):
            arr = np.asarray(x, dtype=float)
            val = np.polynomial.polynomial.polyval(arr, cs)
            return val if arr.shape else float(val)

        return ev

    derivs = []
    cur = np.asarray(coeffs)
    for _ in range(max(len(coeffs) - 1, 1)):
        cur = np.polynomial.polynomial.polyder(cur) if cur.size > 1 else np.zeros(1)
        derivs.append(make(cur))
    return PointwiseFunction(
        eval=make(coeffs),
        name=f"poly{list(coeffs)}",
        deriv=tuple(derivs),
        regularity_tag="Sobolev",
        smoothness_order=8,
        window_hint=(0.0, 1.0),
    )


def _sinc_parts(x):
    """sinc, sinc', sinc'' with a series switch near the origin."""
    x = np.asarray(x, dtype=float)
    s = np.sinc(x)
    px = np.pi * x
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)  # avoid 0-division in the generic branch
    ds_gen = (np.cos(px) - s) / xs
    dds_gen = -np.pi**2 * s - 2.0 * ds_gen / xs
    ds_ser = -(np.pi**2) * x / 3.0 + np.pi**4 * x**3 / 30.0
    dds_ser = -(np.pi**2) / 3.0 + np.pi**4 * x * x / 10.0
    return s, np.where(small, ds_ser, ds_gen), np.where(small, dds_ser, dds_gen)


def sinc_packet(power: int = 8) -> PointwiseFunction:
    """sinc(x)^power: bandlimited to power*pi, decays like |x|^-power."""
    if power < 2 or power % 2:
        raise ConfigError(f"sinc_packet power must be even and >= 2, got {power}")
    m = int(power)

    def ev(x):
        arr = np.asarray(x, dtype=float)
        val = np.sinc(arr) ** m
        return val if arr.shape else float(val)

    def d1(x):
        arr = np.asarray(x, dtype=float)
        s, ds, _ = _sinc_parts(arr)
        val = m * s ** (m - 1) * ds
        return val if arr.shape else float(val)

    def d2(x):
        arr = np.asarray(x, dtype=float)
        s, ds, dds = _sinc_parts(arr)
        val = m * ((m - 1) * s ** (m - 2) * ds * ds + s ** (m - 1) * dds)
        return val if arr.shape else float(val)

    return PointwiseFunction(
        eval=ev,
        name=f"sinc_packet[{m}]",
        deriv=(d1, d2),
        regularity_tag="Sobolev",
        smoothness_order=8,
        window_hint=(-16.0, 16.0),
        meta={"bandwidth": m * math.pi},
    )


def sobolev_sample(r: int) -> PointwiseFunction:
    """x^r (1-x)^r on (0, 1), zero outside: lies in W^r_p but not W^(r+1)_p."""
    if not (1 <= r <= 6):
        raise ConfigError(f"sobolev_sample r must be in 1..6, got {r}")
    base = np.zeros(2 * r + 1)
    for j in range(r + 1):
        base[r + j] = math.comb(r, j) * (-1.0) ** j  # coefficients of x^r(1-x)^r

    def make(cs):
        def ev(x, cs=np.asarray(cs)):
            arr = np.asarray(x, dtype=float)
            inside = (arr > 0.0) & (arr < 1.0)
            val = np.where(inside, np.polynomial.polynomial.polyval(arr, cs), 0.0)
            return val if arr.shape else float(val)

        return ev

    derivs = []
    cur = base
    for _ in range(r):
        cur = np.polynomial.polynomial.polyder(cur)
        derivs.append(make(cur))
    return PointwiseFunction(
        eval=make(base),
        name=f"sobolev_sample[{r}]",
        deriv=tuple(derivs),
        regularity_tag="Sobolev",
        smoothness_order=r,
        window_hint=(-0.5, 1.5),
    )


_REGISTRY = {
    "dirichlet": (dirichlet, ()),
    "even_denominator": (even_denominator, ()),
    "power_singularity": (power_singularity, ("alpha",)),
    "bspline": (bspline, ("order",)),
    "gaussian_bump": (gaussian_bump, ("center", "width")),
    "poly": (poly, ("coeffs",)),
    "sinc_packet": (sinc_packet, ("power",)),
    "sobolev_sample": (sobolev_sample, ("r",)),
}


def builtin(name: str, params: Optional[dict] = None) -> PointwiseFunction:
    """Instantiate a corpus member by string id and parameter map."""
    if name not in _REGISTRY:
        raise ConfigError(f"unknown builtin {name!r}; known: {sorted(_REGISTRY)}")
    factory, keys = _REGISTRY[name]
    params = dict(params or {})
    unknown = set(params) - set(keys)
    if unknown:
        raise ConfigError(f"unknown parameters {sorted(unknown)} for builtin {name!r}")
    return factory(**params)


def corpus_names():
    return sorted(_REGISTRY)


def default_smooth_line_corpus():
    """Line-domain members with enough regularity for rate experiments."""
    return [gaussian_bump(), sinc_packet(), bspline(4), bspline(5), gaussian_bump(0.3, 2.0)]


def default_interval_corpus():
    """Members natural on [0, 1], including the pathological pair."""
    return [
        poly([0.0, 1.0, -3.0, 2.0]),
        sobolev_sample(2),
        gaussian_bump(0.5, 0.2),
        dirichlet(),
        even_denominator(),
    ]
