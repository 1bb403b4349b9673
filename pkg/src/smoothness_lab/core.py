"""Domains, pointwise function representation, and L^p quadrature.

The central convention of this library is that a function has two faces:
an exact pointwise rule (``eval``), used whenever individual node values
matter (discrete seminorms, sampling operators, oscillation sups), and an
optional almost-everywhere representative (``ae_rep``), used by every
integral. Keeping the two separate makes objects like the rational
indicator behave correctly: its integral is zero while its value at every
rational node is one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import CapabilityError, ConfigError, DomainError

DEFAULT_LINE_WINDOW = (-64.0, 64.0)

# Sub-cell offset used by the jittered midpoint rule: the midpoint shifted
# by frac(1/sqrt(2)) cell widths, wrapped so the node stays inside its cell.
# An irrational offset guarantees quadrature nodes of rational-endpoint
# domains never land on rationals with small denominator.
DEFAULT_JITTER = math.sqrt(2.0) / 2.0 % 1.0

_GL3_NODES = np.array([-math.sqrt(3.0 / 5.0), 0.0, math.sqrt(3.0 / 5.0)])
_GL3_WEIGHTS = np.array([5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])


@dataclass(frozen=True)
class Domain:
    """Either the whole line (with an effective window) or an interval [a, b].

    For ``kind == "line"`` the pair (lo, hi) is the computation window:
    built-in functions are chosen so that mass outside it is negligible.
    For ``kind == "interval"`` it is the interval itself.
    """

    kind: str
    lo: float
    hi: float

    def __post_init__(self):
        if self.kind not in ("line", "interval"):
            raise ConfigError(f"unknown domain kind {self.kind!r}")
        if not (self.lo < self.hi):
            raise DomainError(f"empty domain: [{self.lo}, {self.hi}]")

    @classmethod
    def interval(cls, a: float, b: float) -> "Domain":
        return cls("interval", float(a), float(b))

    @classmethod
    def line(cls, lo: float = DEFAULT_LINE_WINDOW[0], hi: float = DEFAULT_LINE_WINDOW[1]) -> "Domain":
        return cls("line", float(lo), float(hi))

    @property
    def is_line(self) -> bool:
        return self.kind == "line"

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        if self.is_line:
            return True
        return self.lo - tol <= x <= self.hi + tol

    def clip_sub(self, sub) -> tuple:
        """Validate a subinterval request against this domain."""
        lo, hi = float(sub[0]), float(sub[1])
        if not (lo < hi):
            raise DomainError(f"empty subinterval ({lo}, {hi})")
        if not self.is_line and (lo < self.lo - 1e-12 or hi > self.hi + 1e-12):
            raise DomainError(f"subinterval ({lo}, {hi}) not contained in [{self.lo}, {self.hi}]")
        return (lo, hi)


@dataclass(frozen=True)
class QuadratureConfig:
    """Composite-rule configuration for all integrals.

    rule "midpoint" evaluates one point per cell at the midpoint shifted by
    jitter*cellwidth (wrapped into the cell); "gauss3" uses three
    Gauss-Legendre nodes per cell and ignores the jitter (intended for
    smooth integrands). Identical configs always produce identical results.
    """

    cells: int = 4096
    jitter: float = DEFAULT_JITTER
    rule: str = "midpoint"

    def __post_init__(self):
        if self.cells < 16:
            raise ConfigError(f"cells must be >= 16, got {self.cells}")
        if not (0.0 <= self.jitter < 1.0):
            raise ConfigError(f"jitter must lie in [0, 1), got {self.jitter}")
        if self.rule not in ("midpoint", "gauss3"):
            raise ConfigError(f"unknown quadrature rule {self.rule!r}")

    def nodes_weights(self, lo: float, hi: float):
        """Evaluation nodes and weights for the composite rule on [lo, hi]."""
        w = (hi - lo) / self.cells
        edges = lo + w * np.arange(self.cells)
        if self.rule == "midpoint":
            offset = (0.5 + self.jitter) % 1.0
            pts = edges + offset * w
            wts = np.full(self.cells, w)
            return pts, wts
        half = 0.5 * w
        centers = edges + half
        pts = (centers[:, None] + half * _GL3_NODES[None, :]).ravel()
        wts = np.tile(half * _GL3_WEIGHTS, self.cells)
        return pts, wts


DEFAULT_QUAD = QuadratureConfig()


@dataclass(frozen=True)
class PointwiseFunction:
    """A real function with exact pointwise values.

    eval must accept scalars and ndarrays and act elementwise. deriv, when
    provided, holds closed-form derivatives (deriv[0] is the first
    derivative). ae_rep, when present, is the representative that all
    quadrature must use; eval keeps serving node evaluations. osc_oracle is
    an exact local-oscillation rule ``(k, x, delta) -> sup`` for functions
    whose oscillation no finite grid can see. regularity_tag is one of
    "bounded", "Lp", "Sobolev", "pathological"; smoothness_order qualifies
    the Sobolev tag.
    """

    eval: Callable
    name: str = "f"
    deriv: tuple = ()
    ae_rep: Optional[Callable] = None
    osc_oracle: Optional[Callable] = None
    regularity_tag: str = "bounded"
    smoothness_order: Optional[int] = None
    window_hint: Optional[tuple] = None
    meta: Optional[dict] = field(default=None, compare=False)

    def __call__(self, x):
        return self.eval(x)

    @property
    def quad_rep(self) -> Callable:
        """The callable integrals must use: ae_rep if declared, else eval."""
        return self.ae_rep if self.ae_rep is not None else self.eval

    @property
    def is_bounded(self) -> bool:
        return self.regularity_tag != "Lp"

    def with_name(self, name: str) -> "PointwiseFunction":
        return replace(self, name=name)

    def derivative(self, k: int) -> Callable:
        if k == 0:
            return self.eval
        if k > len(self.deriv):
            raise CapabilityError(f"{self.name} carries no closed-form derivative of order {k}")
        return self.deriv[k - 1]

    def __add__(self, other):
        return _combine(self, other, 1.0, f"({self.name}+{other.name})")

    def __sub__(self, other):
        return _combine(self, other, -1.0, f"({self.name}-{other.name})")

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return scale_function(float(c), self)

    __rmul__ = __mul__


_TAG_RANK = {"bounded": 0, "Sobolev": 1, "Lp": 2, "pathological": 3}


def _combine(f: PointwiseFunction, g: PointwiseFunction, sign: float, name: str) -> PointwiseFunction:
    fe, ge = f.eval, g.eval

    def ev(x, fe=fe, ge=ge, sign=sign):
        return fe(x) + sign * ge(x)

    ae = None
    if f.ae_rep is not None or g.ae_rep is not None:
        fq, gq = f.quad_rep, g.quad_rep

        def ae(x, fq=fq, gq=gq, sign=sign):
            return fq(x) + sign * gq(x)

    nd = min(len(f.deriv), len(g.deriv))
    deriv = tuple(
        (lambda x, fd=f.deriv[i], gd=g.deriv[i], sign=sign: fd(x) + sign * gd(x)) for i in range(nd)
    )
    tag = max((f.regularity_tag, g.regularity_tag), key=_TAG_RANK.__getitem__)
    return PointwiseFunction(eval=ev, name=name, deriv=deriv, ae_rep=ae, regularity_tag=tag)


def scale_function(c: float, f: PointwiseFunction) -> PointwiseFunction:
    def ev(x, fe=f.eval, c=c):
        return c * fe(x)

    ae = None
    if f.ae_rep is not None:
        def ae(x, fq=f.ae_rep, c=c):
            return c * fq(x)

    deriv = tuple((lambda x, fd=d, c=c: c * fd(x)) for d in f.deriv)
    osc = None
    if f.osc_oracle is not None:
        def osc(k, x, delta, fo=f.osc_oracle, c=c):
            return abs(c) * fo(k, x, delta)

    return PointwiseFunction(
        eval=ev,
        name=f"{c}*{f.name}",
        deriv=deriv,
        ae_rep=ae,
        osc_oracle=osc,
        regularity_tag=f.regularity_tag,
        smoothness_order=f.smoothness_order,
        window_hint=f.window_hint,
    )


def constant_function(c: float, name: str = None) -> PointwiseFunction:
    c = float(c)

    def ev(x, c=c):
        x = np.asarray(x, dtype=float)
        return np.full(x.shape, c) if x.shape else c

    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    return PointwiseFunction(
        eval=ev, name=name or f"const[{c}]", deriv=(zero, zero, zero), regularity_tag="bounded"
    )


def from_callable(fn, name="f", deriv=(), **kw) -> PointwiseFunction:
    """Wrap a vectorized callable as a PointwiseFunction."""
    return PointwiseFunction(eval=fn, name=name, deriv=tuple(deriv), **kw)


def lp_norm(
    f: PointwiseFunction,
    dom: Domain,
    p: float,
    sub=None,
    q: QuadratureConfig = DEFAULT_QUAD,
) -> float:
    """Composite-rule approximation of the L^p norm of f over dom (or sub).

    Uses the a.e. representative when the function declares one; the
    jittered midpoint rule keeps nodes off rational measure-zero sets.
    """
    if not (np.isfinite(p) and p >= 1):
        raise DomainError(f"lp_norm requires finite p >= 1, got {p}")
    lo, hi = (dom.lo, dom.hi) if sub is None else dom.clip_sub(sub)
    pts, wts = q.nodes_weights(lo, hi)
    vals = np.abs(np.asarray(f.quad_rep(pts), dtype=float))
    return float(np.sum(wts * vals**p) ** (1.0 / p))


@dataclass(frozen=True)
class MajorantResult:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def omega_p_majorant_check(
    f: PointwiseFunction,
    g: PointwiseFunction,
    dom: Domain,
    p: float,
    q: QuadratureConfig = DEFAULT_QUAD,
    grid: int = 4097,
    tol: float = 1e-12,
) -> MajorantResult:
    """Sufficient test that f has an integrable even non-increasing majorant.

    Checks, on a dense grid over the window: |f| <= g, g even, g
    non-increasing on [0, oo), and that the L^p norm of g is finite. Passing
    implies membership of f in the natural domain of pointwise sampling
    series; failing only means this particular g does not witness it.
    """
    if not dom.is_line:
        raise DomainError("majorant check applies to line domains only")
    xs = np.linspace(dom.lo, dom.hi, grid)
    fv = np.abs(np.asarray(f.eval(xs), dtype=float))
    gv = np.asarray(g.eval(xs), dtype=float)
    if np.any(fv > gv + tol):
        i = int(np.argmax(fv - gv))
        return MajorantResult(False, f"|f| > g at x={xs[i]:.6g}")
    half = np.linspace(0.0, max(abs(dom.lo), abs(dom.hi)), grid)
    gp = np.asarray(g.eval(half), dtype=float)
    gm = np.asarray(g.eval(-half), dtype=float)
    if np.any(np.abs(gp - gm) > tol):
        return MajorantResult(False, "g is not even")
    if np.any(np.diff(gp) > tol):
        return MajorantResult(False, "g is not non-increasing on [0, oo)")
    norm = lp_norm(g, dom, p, q=q)
    if not np.isfinite(norm):
        return MajorantResult(False, "g has no finite L^p norm")
    return MajorantResult(True, f"majorant accepted, ||g||_p = {norm:.6g}")
