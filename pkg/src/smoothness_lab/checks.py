"""Inequality and equivalence checkers with frozen-constant regression.

Every checker tabulates left- and right-hand sides of one estimate across a
scale grid and produces an InequalityReport. Estimates that are literal
(constant 1) are verified with tiny absolute slack; estimates that only
assert existence of a constant are compared against constants measured once
on the frozen corpus and stored in data/frozen_constants.json, with 5%
slack. A verdict of "degenerate" (all rows 0/0) is deliberately distinct
from "holds": trivial inputs must not inflate pass rates.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from ._parallel import thread_map
from .core import DEFAULT_QUAD, Domain, PointwiseFunction, QuadratureConfig, lp_norm
from .discrete import NodeSet, semi_discrete_modulus, uniform_line_nodes
from .errors import CapabilityError, DomainError
from .operators import OperatorFamily, operator_error
from .smoothness import ModulusRequest, modulus_of_smoothness

ZERO_TOL = 1e-10
FROZEN_SLACK = 0.05


def _load_frozen() -> dict:
    try:
        payload = resources.files("smoothness_lab").joinpath("data/frozen_constants.json")
        return json.loads(payload.read_text())
    except (FileNotFoundError, OSError):
        return {}


_FROZEN_CACHE: Optional[dict] = None


def frozen_constant(key: str) -> Optional[float]:
    global _FROZEN_CACHE
    if _FROZEN_CACHE is None:
        _FROZEN_CACHE = _load_frozen()
    value = _FROZEN_CACHE.get(key)
    return float(value) if value is not None else None


@dataclass(frozen=True)
class InequalityReport:
    """lhs/rhs table for one named estimate, with a three-way verdict."""

    name: str
    rows: tuple
    max_ratio: float
    verdict: str
    conditional: bool = False
    notes: str = ""
    frozen_key: Optional[str] = None

    def to_summary(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "max_ratio": None if math.isnan(self.max_ratio) else self.max_ratio,
            "conditional": self.conditional,
            "rows": len(self.rows),
            "notes": self.notes,
        }


def build_report(
    name: str,
    rows,
    *,
    bound: Optional[float] = None,
    frozen_key: Optional[str] = None,
    slack_abs: float = 0.0,
    conditional: bool = False,
    notes: str = "",
    zero_tol: float = ZERO_TOL,
) -> InequalityReport:
    """Assemble rows with lhs/rhs into a report.

    bound=1.0 marks a literal inequality (lhs <= rhs + slack_abs).
    frozen_key compares the worst ratio against the stored regression
    constant with 5% slack. A row whose rhs vanishes while lhs is clearly
    positive is a genuine falsification regardless of constants.
    """
    ratios = []
    falsified = False
    out_rows = []
    for row in rows:
        row = dict(row)
        lhs, rhs = float(row["lhs"]), float(row["rhs"])
        if rhs > zero_tol:
            ratio = lhs / rhs
            ratios.append(ratio)
        elif lhs > math.sqrt(zero_tol):
            ratio = math.inf
            ratios.append(ratio)
            falsified = True
        else:
            ratio = math.nan
        row["ratio"] = ratio
        out_rows.append(row)
    if not ratios:
        return InequalityReport(
            name, tuple(out_rows), math.nan, "degenerate", conditional, notes, frozen_key
        )
    max_ratio = max(ratios)
    verdict = "holds_with_constant"
    if falsified:
        verdict = "violated"
    elif bound is not None:
        worst = max(r["lhs"] - r["rhs"] for r in out_rows)
        if max_ratio > bound and worst > slack_abs:
            verdict = "violated"
    elif frozen_key is not None:
        limit = frozen_constant(frozen_key)
        if limit is not None and max_ratio > limit * (1.0 + FROZEN_SLACK):
            verdict = "violated"
        elif limit is None:
            notes = (notes + " " if notes else "") + "no frozen constant; measured only"
    return InequalityReport(name, tuple(out_rows), max_ratio, verdict, conditional, notes, frozen_key)


# ---------------------------------------------------------------------------
# generic checkers (the spec-facing operations)
# ---------------------------------------------------------------------------


def check_upper_estimate(
    f: PointwiseFunction,
    family_builder: Callable[[float], OperatorFamily],
    dom: Domain,
    nodes_builder: Callable[[float], NodeSet],
    r: int,
    s: int,
    p: float,
    scale_grid,
    *,
    steklov_scale: Callable[[float], float] = None,
    omega_step: Callable[[float], float] = None,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 192,
    h_grid_size: int = 48,
    name: str = "upper-estimate",
    frozen_key: Optional[str] = None,
) -> InequalityReport:
    """Operator error against the semi-discrete modulus across scales."""
    steklov_scale = steklov_scale or (lambda sc: 1.0 / sc)
    omega_step = omega_step or steklov_scale

    def one(scale):
        fam = family_builder(scale)
        err = operator_error(f, fam, dom, p, q)
        sd = semi_discrete_modulus(
            f,
            dom,
            nodes_builder(scale),
            r,
            s,
            p,
            steklov_scale(scale),
            q,
            omega_step=omega_step(scale),
            u_grid=u_grid,
            h_grid_size=h_grid_size,
        )
        return {
            "function": f.name,
            "operator": fam.name,
            "scale": scale,
            "p": p,
            "r": r,
            "s": s,
            "lhs": err,
            "rhs": sd.total,
            "discrete_part": sd.discrete,
            "omega_part": sd.omega,
        }

    return build_report(name, thread_map(one, scale_grid), frozen_key=frozen_key)


def check_lower_estimate(
    f: PointwiseFunction,
    family_builder: Callable[[float], OperatorFamily],
    dom: Domain,
    nodes_builder: Callable[[float], NodeSet],
    r: int,
    s: int,
    p: float,
    scale_grid,
    K2: float,
    *,
    C1: Optional[float] = None,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 192,
    h_grid_size: int = 48,
    name: str = "lower-estimate",
) -> InequalityReport:
    """Hypothesis-conditional lower bound: K2*discrete - C1*omega <= error.

    No shipped operator family is known to satisfy the lower stability
    condition; the caller supplies the hypothesized K2 and the report is
    clearly labeled conditional. The default C1 mirrors the constant the
    two-sided proof manufactures: a step-down factor times the averaging
    error constant plus the derivative-penalty constant.
    """
    if C1 is None:
        c1 = frozen_constant("steklov_error_ratio") or 1.0
        c2 = frozen_constant("steklov_derivative_ratio") or 3.0
        C1 = 2.0 ** (r - s) * c1 + c2

    def one(scale):
        fam = family_builder(scale)
        err = operator_error(f, fam, dom, p, q)
        sd = semi_discrete_modulus(
            f,
            dom,
            nodes_builder(scale),
            r,
            s,
            p,
            1.0 / scale,
            q,
            u_grid=u_grid,
            h_grid_size=h_grid_size,
        )
        lhs = K2 * sd.discrete - C1 * sd.omega
        return {
            "function": f.name,
            "operator": fam.name,
            "scale": scale,
            "p": p,
            "r": r,
            "s": s,
            "K2": K2,
            "C1": C1,
            "lhs": max(lhs, 0.0),
            "rhs": err,
        }

    return build_report(
        name,
        thread_map(one, scale_grid),
        bound=1.0,
        slack_abs=1e-9,
        conditional=True,
        notes=f"conditional on hypothesized lower stability constant K2={K2}",
    )


def dyadic_sum_bound(
    f: PointwiseFunction,
    family_builder: Callable[[float], OperatorFamily],
    dom: Domain,
    nodes_builder: Callable[[float], NodeSet],
    r: int,
    s: int,
    p: float,
    W: float,
    *,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 192,
    h_grid_size: int = 48,
    name: str = "dyadic-sum",
    frozen_key: Optional[str] = None,
):
    """Semi-discrete modulus against the telescoping dyadic error sum.

    Returns (report, k4_rows): the bound's lhs/rhs table plus the measured
    derivative-vs-value ratios of consecutive dyadic differences, which
    quantify the Bernstein-type hypothesis the bound rests on.
    """
    m = int(math.floor(math.log2(W)))
    errors = {}
    for k in range(m + 1):
        fam = family_builder(float(2**k))
        errors[k] = operator_error(f, fam, dom, p, q)
    fam_W = family_builder(float(W))
    err_W = operator_error(f, fam_W, dom, p, q)
    norm_f = lp_norm(f, dom, p, q=q)
    total = 0.0
    for k in range(m + 1):
        prev = errors[k - 1] if k >= 1 else norm_f  # scale 1/2 means the zero operator
        total += 2.0 ** (s * k) * (errors[k] + prev)
    rhs = err_W + total / W**s
    sd = semi_discrete_modulus(
        f, dom, nodes_builder(W), r, s, p, 1.0 / W, q, u_grid=u_grid, h_grid_size=h_grid_size
    )
    row = {
        "function": f.name,
        "operator": fam_W.name,
        "scale": W,
        "p": p,
        "r": r,
        "s": s,
        "lhs": sd.total,
        "rhs": rhs,
    }
    k4_rows = []
    for nu in range(1, m + 1):
        fam_hi = family_builder(float(2**nu))
        fam_lo = family_builder(float(2 ** (nu - 1)))
        g_hi, g_lo = fam_hi.apply(f), fam_lo.apply(f)
        diff = g_hi - g_lo
        dnorm = lp_norm(diff, dom, p, q=q)
        try:
            deriv_hi = fam_hi.derivative(f, s)
            deriv_lo = fam_lo.derivative(f, s)
        except DomainError:
            continue  # bottom dyadic scale cannot carry an order-s derivative
        ddiff = deriv_hi - deriv_lo
        ddnorm = lp_norm(ddiff, dom, p, q=q)
        k4_rows.append(
            {
                "function": f.name,
                "nu": nu,
                "s": s,
                "p": p,
                "deriv_norm": ddnorm,
                "value_norm": dnorm,
                "K4": ddnorm / (2.0 ** (s * nu) * dnorm) if dnorm > ZERO_TOL else math.nan,
            }
        )
    report = build_report(name, [row], frozen_key=frozen_key)
    return report, k4_rows


def realization_check(
    f: PointwiseFunction,
    family_builder: Callable[[float], OperatorFamily],
    dom: Domain,
    nodes_builder: Callable[[float], NodeSet],
    r: int,
    s: int,
    p: float,
    scale_grid,
    *,
    effective_scale: Callable[[float], float] = None,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 192,
    h_grid_size: int = 48,
    name: str = "realization",
    frozen_upper: Optional[str] = None,
    frozen_lower: Optional[str] = None,
):
    """Two-sided comparison of the modulus with error + derivative penalty.

    effective_scale maps the family scale to the modulus scale (identity
    for sampling families; sqrt(n) for Bernstein). Also measures the
    derivative-domination constant of the applied operator at each scale.
    """
    effective_scale = effective_scale or (lambda sc: sc)

    def one(scale):
        eff = effective_scale(scale)
        fam = family_builder(scale)
        err = operator_error(f, fam, dom, p, q)
        gderiv = fam.derivative(f, s)
        penalty = eff ** (-s) * lp_norm(gderiv, dom, p, q=q)
        sd = semi_discrete_modulus(
            f,
            dom,
            nodes_builder(scale),
            r,
            s,
            p,
            1.0 / eff,
            q,
            omega_step=1.0 / eff,
            u_grid=u_grid,
            h_grid_size=h_grid_size,
        )
        applied = fam.apply(f)
        omega_applied = modulus_of_smoothness(
            applied, dom, ModulusRequest(order=s, delta=1.0 / eff, p=p, h_grid_size=h_grid_size), q
        )
        k5 = (
            eff ** (-s) * lp_norm(gderiv, dom, p, q=q) / omega_applied
            if omega_applied > ZERO_TOL
            else math.nan
        )
        return {
            "function": f.name,
            "operator": fam.name,
            "scale": scale,
            "p": p,
            "r": r,
            "s": s,
            "lhs": sd.total,
            "rhs": err + penalty,
            "K5": k5,
        }

    rows = thread_map(one, scale_grid)
    upper = build_report(name + "-upper", rows, frozen_key=frozen_upper)
    flipped = [dict(row, lhs=row["rhs"], rhs=row["lhs"]) for row in rows]
    lower = build_report(name + "-lower", flipped, frozen_key=frozen_lower)
    return upper, lower


def series_bound_check(
    f: PointwiseFunction,
    family_builder: Callable[[float], OperatorFamily],
    dom: Domain,
    p: float,
    s: int,
    W: float,
    k_max: int,
    *,
    q: QuadratureConfig = DEFAULT_QUAD,
    u_grid: int = 192,
    h_grid_size: int = 48,
    name: str = "series-bound",
    frozen_key: Optional[str] = None,
) -> InequalityReport:
    """Modulus bounded by the tail series of scaled derivative norms.

    Only lattice-interpolatory families qualify; the truncated series
    carries a convergence flag comparing the last term to the total.
    """
    probe = family_builder(float(W))
    if not probe.interpolates:
        raise CapabilityError(f"{probe.name} does not interpolate the lattice; series bound needs it")
    terms = []
    for k in range(1, k_max + 1):
        scale = W * 2.0**k
        fam = family_builder(float(scale))
        gderiv = fam.derivative(f, s)
        terms.append(scale ** (-s) * lp_norm(gderiv, dom, p, q=q))
    rhs = float(sum(terms))
    sd = semi_discrete_modulus(
        f,
        dom,
        uniform_line_nodes(W, dom),
        s,
        s,
        p,
        1.0 / W,
        q,
        u_grid=u_grid,
        h_grid_size=h_grid_size,
    )
    tail_flag = terms[-1] / rhs if rhs > 0 else math.nan
    row = {
        "function": f.name,
        "operator": probe.name,
        "scale": W,
        "p": p,
        "r": s,
        "s": s,
        "k_max": k_max,
        "tail_fraction": tail_flag,
        "lhs": sd.total,
        "rhs": rhs,
    }
    return build_report(name, [row], frozen_key=frozen_key, notes=f"series truncated at k_max={k_max}")
