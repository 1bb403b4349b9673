"""Closed-form reproductions of the three reference examples.

Example 1: the rational indicator on [0, 1] has zero integral modulus while
its semi-discrete modulus and averaged modulus both equal the interval
length to the power 1/p. Example 2: the even-denominator indicator sampled
at odd-denominator nodes separates the two strictly (semi-discrete modulus
exactly zero, averaged modulus not). Example 3: the truncated power
singularity decays at the algebraic rate 1/p - alpha in every part.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .core import Domain, QuadratureConfig
from .corpus import dirichlet, even_denominator, power_singularity
from .discrete import equispaced_interval_nodes, semi_discrete_modulus, uniform_line_nodes
from .errors import ConfigError
from .rates import fit_decay
from .smoothness import tau_modulus

UNIT = Domain.interval(0.0, 1.0)


@dataclass(frozen=True)
class ExampleReport:
    example: int
    ok: bool
    rows: tuple
    elapsed_seconds: float
    details: str = ""

    def to_summary(self) -> dict:
        return {
            "example": self.example,
            "ok": self.ok,
            "elapsed_seconds": self.elapsed_seconds,
            "rows": len(self.rows),
            "details": self.details,
        }


def _example_1() -> ExampleReport:
    t0 = time.time()
    f = dirichlet()
    q = QuadratureConfig(cells=1024)
    rows, ok, issues = [], True, []
    for p in (1.0, 2.0, 4.0):
        for n in (16, 64, 256):
            nodes = equispaced_interval_nodes(n, 0.0, 1.0)
            sd = semi_discrete_modulus(f, UNIT, nodes, 1, 1, p, 1.0 / n, q, u_grid=64)
            tau = tau_modulus(f, UNIT, 1, 1.0 / n, p)
            literal = ((n + 1) / n) ** (1.0 / p)
            row = {
                "function": f.name,
                "p": p,
                "n": n,
                "omega": sd.omega,
                "semi_discrete": sd.total,
                "tau": tau,
                "literal_node_sum": literal,
            }
            rows.append(row)
            if sd.omega != 0.0:
                ok, _ = False, issues.append(f"omega nonzero at p={p}, n={n}: {sd.omega}")
            if abs(sd.total - literal) > 1e-9:
                ok, _ = False, issues.append(f"semi-discrete off literal sum at p={p}, n={n}")
            if abs(tau - 1.0) > 1e-9:
                ok, _ = False, issues.append(f"tau != (b-a)^(1/p) at p={p}, n={n}: {tau}")
            if abs(sd.total - tau) > 2.0 / n:
                ok, _ = False, issues.append(f"semi-discrete vs tau gap not O(1/n) at p={p}, n={n}")
    return ExampleReport(1, ok, tuple(rows), time.time() - t0, "; ".join(issues))


def _example_2() -> ExampleReport:
    t0 = time.time()
    f = even_denominator()
    q = QuadratureConfig(cells=1024)
    rows, ok, issues = [], True, []
    for p in (1.0, 2.0):
        for n in (8, 32):
            m = 2 * n + 1
            nodes = equispaced_interval_nodes(m, 0.0, 1.0)
            sd = semi_discrete_modulus(f, UNIT, nodes, 1, 1, p, 1.0 / m, q, u_grid=64)
            tau = tau_modulus(f, UNIT, 1, 1.0 / n, p)
            rows.append(
                {
                    "function": f.name,
                    "p": p,
                    "n": n,
                    "nodes": m + 1,
                    "semi_discrete": sd.total,
                    "tau": tau,
                    "separation_ratio": sd.total / tau if tau > 0 else math.inf,
                }
            )
            if sd.total != 0.0:
                ok, _ = False, issues.append(f"semi-discrete not exactly 0 at p={p}, n={n}: {sd.total}")
            if abs(tau - 1.0) > 1e-9:
                ok, _ = False, issues.append(f"tau != (b-a)^(1/p) at p={p}, n={n}")
            if tau > 0 and sd.total / tau >= 1e-9:
                ok, _ = False, issues.append(f"separation ratio not < 1e-9 at p={p}, n={n}")
    return ExampleReport(2, ok, tuple(rows), time.time() - t0, "; ".join(issues))


def _example_3() -> ExampleReport:
    t0 = time.time()
    dom = Domain.line(-0.5, 1.5)
    q = QuadratureConfig(cells=2**17)
    rows, ok, issues = [], True, []
    scales = [2.0**k for k in range(4, 11)]
    for p, alpha in ((2.0, 0.25), (4.0, 0.1)):
        f = power_singularity(alpha)
        expected = -(1.0 / p - alpha)
        totals, discretes, omegas = [], [], []
        for W in scales:
            nodes = uniform_line_nodes(W, dom)
            sd = semi_discrete_modulus(
                f, dom, nodes, 1, 1, p, 1.0 / W, q, u_grid=192, h_grid_size=48
            )
            totals.append((W, sd.total))
            discretes.append((W, sd.discrete))
            omegas.append((W, sd.omega))
        fit_total = fit_decay(totals)
        fit_disc = fit_decay(discretes)
        fit_omega = fit_decay(omegas)
        rows.append(
            {
                "function": f.name,
                "p": p,
                "alpha": alpha,
                "expected_order": expected,
                "total_order": fit_total.fitted_order,
                "discrete_order": fit_disc.fitted_order,
                "omega_order": fit_omega.fitted_order,
                "r_squared": fit_total.r_squared,
            }
        )
        if abs(fit_total.fitted_order - expected) > 0.05:
            ok, _ = False, issues.append(
                f"total order {fit_total.fitted_order:.3f} vs {expected} at (p={p}, alpha={alpha})"
            )
        for label, fit in (("discrete", fit_disc), ("omega", fit_omega)):
            if abs(fit.fitted_order - expected) > 0.08:
                ok, _ = False, issues.append(
                    f"{label} order {fit.fitted_order:.3f} vs {expected} at (p={p}, alpha={alpha})"
                )
    return ExampleReport(3, ok, tuple(rows), time.time() - t0, "; ".join(issues))


def reproduce_example(example: int) -> ExampleReport:
    """Run one reference example and compare against its closed form."""
    runners = {1: _example_1, 2: _example_2, 3: _example_3}
    if example not in runners:
        raise ConfigError(f"unknown example {example}; choose 1, 2 or 3")
    return runners[example]()
