"""Node sets, discrete seminorms, the semi-discrete modulus, K-functionals.

The semi-discrete modulus couples a discrete seminorm of (smoothed - raw)
function values at sampling nodes with a classical integral modulus; it is
the quantity all operator error estimates in this library are phrased in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import DEFAULT_QUAD, Domain, PointwiseFunction, QuadratureConfig, lp_norm
from .errors import ConfigError, DomainError
from .smoothness import ModulusRequest, modulus_of_smoothness
from .steklov import SteklovSpec, steklov_average, steklov_derivative


@dataclass(frozen=True)
class NodeSet:
    """Sampling nodes with their seminorm weights.

    kind "uniform_line": the lattice j/W truncated to an index range, all
    weights 1/W. kind "interval": n+1 ordered points in [a, b] with uniform
    weight (b-a)/n and a gamma-spacing guarantee. kind "partition": a
    general admissible sequence weighted by its gaps.
    """

    kind: str
    points: np.ndarray
    weights: np.ndarray
    W: Optional[float] = None
    n: Optional[int] = None
    gamma: Optional[float] = None
    bounds: Optional[tuple] = None

    def __post_init__(self):
        if len(self.points) != len(self.weights):
            raise ConfigError("points and weights must have equal length")
        if len(self.points) == 0:
            raise ConfigError("empty node set")


def uniform_line_nodes(W: float, window) -> NodeSet:
    """The lattice (j/W) truncated to the window, weights 1/W."""
    if W <= 0:
        raise ConfigError(f"W must be positive, got {W}")
    lo, hi = (window.lo, window.hi) if isinstance(window, Domain) else window
    j_lo = math.ceil(lo * W - 1e-9)
    j_hi = math.floor(hi * W + 1e-9)
    if j_hi < j_lo:
        raise ConfigError("window contains no lattice nodes")
    js = np.arange(j_lo, j_hi + 1, dtype=float)
    return NodeSet(
        kind="uniform_line",
        points=js / W,
        weights=np.full(js.size, 1.0 / W),
        W=float(W),
        bounds=(lo, hi),
    )


def interval_nodes(points, a: float, b: float, gamma: float = 1.0) -> NodeSet:
    """n+1 ordered nodes in [a, b] with uniform weights (b-a)/n.

    Spacing is validated over consecutive listed nodes plus the wrap pair
    (x_n against (b-a) + x_1): every gap must be at least gamma/n.
    """
    pts = np.asarray(points, dtype=float)
    n = pts.size - 1
    if n < 1:
        raise ConfigError("interval node set needs at least 2 points")
    if not (0.0 < gamma <= 1.0):
        raise ConfigError(f"gamma must lie in (0, 1], got {gamma}")
    if np.any(pts < a - 1e-12) or np.any(pts > b + 1e-12):
        raise DomainError("nodes leave [a, b]")
    gaps = np.diff(pts)
    if np.any(gaps <= 0):
        raise ConfigError("interval nodes must be strictly increasing")
    wrap = (b - a) + pts[1] - pts[-1]
    if min(gaps.min(), wrap) < gamma / n - 1e-12:
        raise ConfigError(f"node spacing falls below gamma/n = {gamma / n}")
    return NodeSet(
        kind="interval",
        points=pts,
        weights=np.full(pts.size, (b - a) / n),
        n=n,
        gamma=float(gamma),
        bounds=(float(a), float(b)),
    )


def equispaced_interval_nodes(n: int, a: float, b: float) -> NodeSet:
    return interval_nodes(a + (b - a) * np.arange(n + 1) / n, a, b, gamma=1.0)


def admissible_partition(points) -> NodeSet:
    """A finite stretch of an admissible sequence, weighted by its gaps."""
    pts = np.asarray(points, dtype=float)
    if pts.size < 2:
        raise ConfigError("partition needs at least 2 points")
    gaps = np.diff(pts)
    if np.any(gaps <= 0):
        raise ConfigError("partition must be strictly increasing")
    if gaps.min() <= 0 or not np.isfinite(gaps.max()):
        raise ConfigError("partition gaps must be bounded away from 0 and infinity")
    return NodeSet(kind="partition", points=pts[1:], weights=gaps, bounds=(pts[0], pts[-1]))


def discrete_seminorm(f: PointwiseFunction, nodes: NodeSet, p: float) -> float:
    """Weighted discrete p-sum of exact pointwise values (never the a.e. rep)."""
    if not (np.isfinite(p) and p >= 1):
        raise DomainError(f"discrete seminorm requires finite p >= 1, got {p}")
    vals = np.abs(np.asarray(f.eval(nodes.points), dtype=float))
    return float(np.sum(nodes.weights * vals**p) ** (1.0 / p))


class SemiDiscreteModulus(NamedTuple):
    total: float
    discrete: float
    omega: float


def semi_discrete_modulus(
    f: PointwiseFunction,
    dom: Domain,
    nodes: NodeSet,
    r: int,
    s: int,
    p: float,
    scale: float,
    q: QuadratureConfig = DEFAULT_QUAD,
    omega_step: Optional[float] = None,
    u_grid: int = 256,
    h_grid_size: int = 64,
) -> SemiDiscreteModulus:
    """Discrete seminorm of (average - f) at the nodes, plus omega_s.

    scale is the averaging radius (1/W on the line, gamma/n on intervals);
    the modulus step defaults to scale on the line and scale/gamma on
    intervals, and both accept generalized scale functions via the explicit
    omega_step argument.
    """
    if s > r:
        raise DomainError(f"s={s} must not exceed r={r}")
    if s < 1:
        raise DomainError(f"s must be >= 1, got {s}")
    if not dom.is_line and scale > (dom.hi - dom.lo) / r + 1e-12:
        raise DomainError(f"scale={scale} exceeds (b-a)/r on the interval")
    if omega_step is None:
        omega_step = scale if dom.is_line else scale / (nodes.gamma or 1.0)
    spec = SteklovSpec(delta=float(scale), r=r, u_grid=u_grid)
    smoothed = steklov_average(f, dom, spec)
    diff_vals = np.asarray(smoothed.eval(nodes.points), dtype=float) - np.asarray(
        f.eval(nodes.points), dtype=float
    )
    discrete = float(np.sum(nodes.weights * np.abs(diff_vals) ** p) ** (1.0 / p))
    omega = modulus_of_smoothness(
        f, dom, ModulusRequest(order=s, delta=float(omega_step), p=p, h_grid_size=h_grid_size), q
    )
    return SemiDiscreteModulus(total=discrete + omega, discrete=discrete, omega=omega)


class KFunctionalEstimate(NamedTuple):
    value: float
    argmin_delta: float


def default_candidate_deltas(scale: float):
    """Geometric candidate radii around the working scale."""
    return [scale * 2.0**k for k in range(-3, 4)]


def k_functional_estimate(
    f: PointwiseFunction,
    dom: Domain,
    nodes: NodeSet,
    s: int,
    p: float,
    W_or_n: float,
    candidate_deltas,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 256,
) -> KFunctionalEstimate:
    """Upper estimate of the semi-discrete K-functional.

    Minimizes the three-term objective over the candidate family of Steklov
    averages g of f. An infimum over a subfamily is an upper bound of the
    true infimum; the equivalence with the semi-discrete modulus guarantees
    it is also a lower bound up to constants.
    """
    candidates = [float(d) for d in candidate_deltas]
    if not candidates:
        raise ConfigError("candidate_deltas must be non-empty")
    if W_or_n <= 0:
        raise ConfigError(f"W_or_n must be positive, got {W_or_n}")
    best = (math.inf, math.nan)
    penalty = float(W_or_n) ** (-s)
    for d in candidates:
        spec = SteklovSpec(delta=d, r=s, u_grid=u_grid)
        spec.validate(dom)
        g = steklov_average(f, dom, spec)
        diff = f - g
        term_nodes = discrete_seminorm(diff, nodes, p)
        term_norm = lp_norm(diff, dom, p, q=q)
        g_s = steklov_derivative(f, dom, spec, s)
        term_deriv = penalty * lp_norm(g_s, dom, p, q=q)
        value = term_nodes + term_norm + term_deriv
        if value < best[0]:
            best = (value, d)
    return KFunctionalEstimate(value=best[0], argmin_delta=best[1])
