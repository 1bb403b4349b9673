"""Named checkers for every estimate the library verifies.

Each entry in CHECKS runs one themed suite on the frozen corpus and
returns a list of InequalityReports. `run_checkers(["all"])` is what the
CLI's verify subcommand executes; exit status is derived from verdicts.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .checks import (
    build_report,
    check_lower_estimate,
    check_upper_estimate,
    dyadic_sum_bound,
    realization_check,
    series_bound_check,
)
from .core import Domain, PointwiseFunction, QuadratureConfig, constant_function, lp_norm
from .corpus import (
    bspline,
    dirichlet,
    even_denominator,
    gaussian_bump,
    poly,
    power_singularity,
    sinc_packet,
    sobolev_sample,
)
from .discrete import (
    NodeSet,
    discrete_seminorm,
    equispaced_interval_nodes,
    k_functional_estimate,
    semi_discrete_modulus,
    uniform_line_nodes,
)
from .errors import ConfigError
from .operators import (
    bernstein_apply,
    bernstein_family,
    bspline_kernel,
    generalized_family,
    m0_moment,
    moment_condition_order,
    operator_error,
    partition_of_unity_defect,
    shannon_family,
    strang_fix_defect,
)
from .smoothness import ModulusRequest, local_modulus, modulus_of_smoothness, modulus_ratio, tau_modulus
from .steklov import SteklovSpec, steklov_average, steklov_derivative, steklov_oracle_nested

UNIT = Domain.interval(0.0, 1.0)
Q_INTERVAL = QuadratureConfig(cells=4096)
Q_LINE = QuadratureConfig(cells=4096)
U_GRID = 48


def _line_dom(f: PointwiseFunction) -> Domain:
    lo, hi = f.window_hint or (-16.0, 16.0)
    return Domain.line(lo, hi)


def _affine() -> PointwiseFunction:
    def ev(x):
        arr = np.asarray(x, dtype=float)
        val = 0.75 * arr - 0.2
        return val if arr.shape else float(val)

    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))

    def slope(x):
        arr = np.asarray(x, dtype=float)
        return np.full(arr.shape, 0.75) if arr.shape else 0.75

    return PointwiseFunction(eval=ev, name="affine", deriv=(slope, zero, zero), regularity_tag="Sobolev", smoothness_order=8)


def _smooth_line_trio():
    return [gaussian_bump(), sinc_packet(), bspline(4)]


def _interval_members():
    return [
        poly([0.0, 1.0, -3.0, 2.0]),
        sobolev_sample(2),
        gaussian_bump(0.5, 0.2),
        dirichlet(),
        even_denominator(),
    ]


def _deriv_members_interval():
    return [poly([0.0, 1.0, -3.0, 2.0]), sobolev_sample(2), gaussian_bump(0.5, 0.2)]


def _shannon_builder(f: PointwiseFunction) -> Callable[[float], object]:
    lo, hi = f.window_hint or (-16.0, 16.0)
    span = hi - lo

    def build(W):
        # enough terms to cover the support window from any probe point, but
        # capped: far-field sinc tails beyond ~2k terms are below 1e-4 and
        # irrelevant to frozen-constant measurements at high dyadic scales
        terms = min(2048, max(64, int(W * span / 2.0) + 128))
        return shannon_family(W, trunc_terms=terms)

    return build


# ---------------------------------------------------------------------------


def check_moduli_inequalities():
    reports = []
    rows_step, rows_deriv, rows_tau, rows_sup = [], [], [], []
    members = _interval_members() + [power_singularity(0.25)]
    for f in members:
        if f.name.startswith("power_singularity"):
            dom, q = Domain.line(-0.5, 1.5), QuadratureConfig(cells=2**15)
        else:
            dom, q = UNIT, Q_INTERVAL
        for p in (1.0, 2.0):
            for (r, k) in ((1, 0), (2, 0), (2, 1)):
                for delta in (0.25, 0.0625):
                    hi = modulus_of_smoothness(f, dom, ModulusRequest(r, delta, p, h_grid_size=32), q)
                    lo = modulus_of_smoothness(f, dom, ModulusRequest(k, delta, p, h_grid_size=32), q)
                    rows_step.append(
                        {"function": f.name, "p": p, "r": r, "k": k, "scale": delta,
                         "lhs": hi, "rhs": 2.0 ** (r - k) * lo}
                    )
    reports.append(
        build_report("modulus-order-comparison", rows_step, bound=1.0, slack_abs=1e-9)
    )

    for f in _deriv_members_interval() + _smooth_line_trio():
        dom = UNIT if (f.window_hint or (0,))[0] >= 0.0 else _line_dom(f)
        q = Q_INTERVAL if not dom.is_line else Q_LINE
        for p in (1.0, 2.0):
            for r in (1, 2):
                if r > len(f.deriv):
                    continue
                dnorm = lp_norm(
                    PointwiseFunction(eval=f.deriv[r - 1], name=f"{f.name}'"), dom, p, q=q
                )
                for delta in (0.25, 0.125):
                    om = modulus_of_smoothness(f, dom, ModulusRequest(r, delta, p, h_grid_size=32), q)
                    rows_deriv.append(
                        {"function": f.name, "p": p, "r": r, "scale": delta,
                         "lhs": om, "rhs": delta**r * dnorm}
                    )
    reports.append(
        build_report("modulus-derivative-bound", rows_deriv, bound=1.0, slack_abs=1e-9)
    )

    for f in _interval_members():
        for p in (1.0, 2.0):
            for k in (1, 2):
                for delta in (0.25, 0.125):
                    om = modulus_of_smoothness(
                        f, UNIT, ModulusRequest(k, delta, p, h_grid_size=32), Q_INTERVAL
                    )
                    tau = tau_modulus(f, UNIT, k, delta, p, t_grid_size=129)
                    rows_tau.append(
                        {"function": f.name, "p": p, "k": k, "scale": delta, "lhs": om, "rhs": tau}
                    )
                    sup = modulus_of_smoothness(
                        f, UNIT, ModulusRequest(k, delta, math.inf, t_grid_size=129), Q_INTERVAL
                    )
                    rows_sup.append(
                        {"function": f.name, "p": p, "k": k, "scale": delta,
                         "lhs": tau, "rhs": (1.0) ** (1.0 / p) * sup}
                    )
    reports.append(build_report("modulus-below-averaged", rows_tau, bound=1.0, slack_abs=1e-9))
    reports.append(
        build_report("averaged-below-supnorm", rows_sup, bound=1.0, slack_abs=1e-9)
    )
    return reports


def check_steklov_oracle():
    rows_eq, rows_const = [], []
    smooth = [gaussian_bump(), poly([0.3, 1.0, -1.2, 0.4]), sinc_packet(), bspline(5), gaussian_bump(0.3, 2.0)]
    for f in smooth:
        dom = _line_dom(f)
        xs = np.linspace(dom.lo / 2.0, dom.hi / 2.0, 100)
        for r in (1, 2, 3):
            spec = SteklovSpec(delta=0.25, r=r, u_grid=U_GRID)
            red = steklov_average(f, dom, spec)
            nested = steklov_oracle_nested(f, dom, spec, cells_per_dim=12)
            sup = float(np.max(np.abs(red.eval(xs) - nested.eval(xs))))
            rows_eq.append({"function": f.name, "r": r, "scale": spec.delta, "lhs": sup, "rhs": 1e-6})
    c = constant_function(1.0)
    dom = Domain.line(-4.0, 4.0)
    xs = np.linspace(-2, 2, 100)
    for r in range(1, 6):
        st = steklov_average(c, dom, SteklovSpec(delta=0.3, r=r))
        dev = float(np.max(np.abs(st.eval(xs) - 1.0)))
        rows_const.append({"function": "const", "r": r, "scale": 0.3, "lhs": dev, "rhs": 1e-12})
    return [
        build_report("steklov-reduction-agreement", rows_eq, bound=1.0, slack_abs=0.0, zero_tol=0.0),
        build_report("steklov-constant-reproduction", rows_const, bound=1.0, slack_abs=0.0, zero_tol=0.0),
    ]


def check_steklov_approximation():
    rows1, rows2, rows3 = [], [], []
    deltas = [2.0 ** (-k) for k in range(2, 9)]
    p = 2.0
    for f in _smooth_line_trio():
        dom, q = _line_dom(f), Q_LINE
        for r in (1, 2):
            for d in deltas:
                spec = SteklovSpec(delta=d, r=r, u_grid=U_GRID)
                st = steklov_average(f, dom, spec)
                err = lp_norm(f - st, dom, p, q=q)
                om = modulus_of_smoothness(f, dom, ModulusRequest(r, d, p, h_grid_size=48), q)
                rows1.append(
                    {"function": f.name, "r": r, "p": p, "scale": d, "lhs": err, "rhs": om}
                )
        for s in (1, 2):
            r = 2
            for d in deltas:
                spec = SteklovSpec(delta=d, r=r, u_grid=U_GRID)
                ds = steklov_derivative(f, dom, spec, s)
                dn = d**s * lp_norm(ds, dom, p, q=q)
                om = modulus_of_smoothness(f, dom, ModulusRequest(s, d, p, h_grid_size=48), q)
                rows2.append(
                    {"function": f.name, "r": r, "s": s, "p": p, "scale": d, "lhs": dn, "rhs": om}
                )
    check_pts = np.linspace(0.02, 0.98, 41)
    for f in _interval_members():
        for r in (1, 2):
            for d in (0.25, 0.0625):
                spec = SteklovSpec(delta=d, r=r, u_grid=U_GRID)
                st = steklov_average(f, UNIT, spec)
                fv = np.asarray(f.eval(check_pts), dtype=float)
                sv = np.asarray(st.eval(check_pts), dtype=float)
                worst_gap, worst_local = 0.0, 1.0
                for x, dv in zip(check_pts, np.abs(fv - sv)):
                    loc = local_modulus(f, UNIT, r, float(x), 2.0 * d, t_grid_size=97)
                    if dv - loc > worst_gap - worst_local:
                        worst_gap, worst_local = dv, loc
                rows3.append(
                    {"function": f.name, "r": r, "scale": d, "lhs": worst_gap, "rhs": worst_local}
                )
    return [
        build_report("steklov-error-vs-modulus", rows1, frozen_key="steklov_error_ratio"),
        build_report("steklov-derivative-vs-modulus", rows2, frozen_key="steklov_derivative_ratio"),
        build_report("steklov-pointwise-local", rows3, bound=1.0, slack_abs=1e-9),
    ]


def check_discrete_seminorm():
    rows_line, rows_interval = [], []
    for f in _smooth_line_trio():
        dom = _line_dom(f)
        dnorm = {p: lp_norm(PointwiseFunction(eval=f.deriv[0], name="d"), dom, p, q=Q_LINE) for p in (1.0, 2.0)}
        fnorm = {p: lp_norm(f, dom, p, q=Q_LINE) for p in (1.0, 2.0)}
        for W in (8.0, 16.0, 32.0, 64.0, 128.0):
            nodes = uniform_line_nodes(W, dom)
            for p in (1.0, 2.0):
                semi = discrete_seminorm(f, nodes, p)
                rows_line.append(
                    {"function": f.name, "scale": W, "p": p,
                     "lhs": semi, "rhs": fnorm[p] + dnorm[p] / W}
                )
    # interval analogue in its proof form: n mean-value cells, right endpoints
    for f in _deriv_members_interval():
        dnorm = {p: lp_norm(PointwiseFunction(eval=f.deriv[0], name="d"), UNIT, p, q=Q_INTERVAL) for p in (1.0, 2.0)}
        fnorm = {p: lp_norm(f, UNIT, p, q=Q_INTERVAL) for p in (1.0, 2.0)}
        for n in (16, 64, 256):
            pts = np.arange(1, n + 1, dtype=float) / n
            nodes = NodeSet(kind="partition", points=pts, weights=np.full(n, 1.0 / n), n=n)
            for p in (1.0, 2.0):
                semi = discrete_seminorm(f, nodes, p)
                rows_interval.append(
                    {"function": f.name, "scale": n, "p": p,
                     "lhs": semi, "rhs": fnorm[p] + dnorm[p] / n}
                )
    return [
        build_report("lattice-seminorm-bound", rows_line, bound=1.0, slack_abs=1e-9),
        build_report("interval-seminorm-bound", rows_interval, bound=1.0, slack_abs=1e-9),
    ]


def check_steklov_vs_tau_discrete():
    rows = []
    for f in _interval_members():
        for n in (8, 16, 32):
            for r in (1, 2):
                delta = 1.0 / (2 * n * r)
                nodes = equispaced_interval_nodes(n, 0.0, 1.0)
                st = steklov_average(f, UNIT, SteklovSpec(delta=delta, r=r, u_grid=U_GRID))
                lhs = discrete_seminorm(f - st, nodes, 2.0)
                tau = tau_modulus(f, UNIT, r, delta + 1.0 / (r * n), 2.0, t_grid_size=97)
                rows.append(
                    {"function": f.name, "scale": n, "r": r, "p": 2.0, "lhs": lhs, "rhs": tau}
                )
    return [build_report("steklov-discrete-vs-averaged", rows, frozen_key="steklov_discrete_tau_c3")]


def check_kfunctional():
    rows_up, rows_down = [], []
    line_members = _smooth_line_trio() + [power_singularity(0.25)]
    for f in line_members:
        dom = Domain.line(-0.5, 1.5) if f.name.startswith("power_singularity") else _line_dom(f)
        q = Q_LINE
        for s in (1, 2):
            for W in (8.0, 32.0, 128.0):
                nodes = uniform_line_nodes(W, dom)
                sd = semi_discrete_modulus(
                    f, dom, nodes, s, s, 2.0, 1.0 / W, q, u_grid=U_GRID, h_grid_size=48
                )
                cands = [d for d in (2.0**k / W for k in range(-2, 3))]
                kf = k_functional_estimate(f, dom, nodes, s, 2.0, W, cands, q, u_grid=U_GRID)
                rows_up.append(
                    {"function": f.name, "scale": W, "s": s, "p": 2.0,
                     "lhs": kf.value, "rhs": sd.total, "argmin_delta": kf.argmin_delta}
                )
                rows_down.append(
                    {"function": f.name, "scale": W, "s": s, "p": 2.0,
                     "lhs": sd.total, "rhs": kf.value}
                )
    for f in _interval_members():
        for s in (1, 2):
            for n in (8, 32, 128):
                nodes = equispaced_interval_nodes(n, 0.0, 1.0)
                sd = semi_discrete_modulus(
                    f, UNIT, nodes, s, s, 2.0, 1.0 / n, Q_INTERVAL, u_grid=U_GRID, h_grid_size=48
                )
                cands = [d for d in (2.0**k / n for k in range(-2, 3)) if d <= 1.0 / s]
                kf = k_functional_estimate(f, UNIT, nodes, s, 2.0, n, cands, Q_INTERVAL, u_grid=U_GRID)
                rows_up.append(
                    {"function": f.name, "scale": n, "s": s, "p": 2.0,
                     "lhs": kf.value, "rhs": sd.total, "argmin_delta": kf.argmin_delta}
                )
                rows_down.append(
                    {"function": f.name, "scale": n, "s": s, "p": 2.0,
                     "lhs": sd.total, "rhs": kf.value}
                )
    return [
        build_report("kfunctional-vs-modulus-upper", rows_up, frozen_key="kfunc_upper_C"),
        build_report("kfunctional-vs-modulus-lower", rows_down, frozen_key="kfunc_lower_C"),
    ]


def check_sharpness_tau():
    rows = []
    for f in _smooth_line_trio():
        dom = _line_dom(f)
        for s in (1, 2):
            for W in (8.0, 32.0, 128.0):
                nodes = uniform_line_nodes(W, dom)
                sd = semi_discrete_modulus(
                    f, dom, nodes, s, s, 2.0, 1.0 / W, Q_LINE, u_grid=U_GRID, h_grid_size=48
                )
                tau = tau_modulus(f, dom, s, 1.0 / W, 2.0, t_grid_size=97)
                rows.append(
                    {"function": f.name, "scale": W, "s": s, "p": 2.0, "lhs": sd.total, "rhs": tau}
                )
    for f in _interval_members():
        for n in (16, 64):
            nodes = equispaced_interval_nodes(n, 0.0, 1.0)
            sd = semi_discrete_modulus(
                f, UNIT, nodes, 1, 1, 2.0, 1.0 / n, Q_INTERVAL, u_grid=U_GRID, h_grid_size=48
            )
            tau = tau_modulus(f, UNIT, 1, 1.0 / n, 2.0, t_grid_size=97)
            rows.append(
                {"function": f.name, "scale": n, "s": 1, "p": 2.0, "lhs": sd.total, "rhs": tau}
            )
    # strict separation witness: odd-denominator nodes zero out the modulus
    f = even_denominator()
    for n in (8, 32):
        m = 2 * n + 1
        nodes = equispaced_interval_nodes(m, 0.0, 1.0)
        sd = semi_discrete_modulus(f, UNIT, nodes, 1, 1, 2.0, 1.0 / m, Q_INTERVAL, u_grid=U_GRID)
        tau = tau_modulus(f, UNIT, 1, 1.0 / n, 2.0)
        rows.append(
            {"function": f.name + "@odd-nodes", "scale": m, "s": 1, "p": 2.0,
             "lhs": sd.total, "rhs": tau}
        )
    return [build_report("semi-discrete-below-averaged", rows, frozen_key="sharpness_tau_C")]


def check_bernstein():
    rows_stab = []
    for f in _interval_members():
        for n in (16, 64, 256):
            nodes = equispaced_interval_nodes(n, 0.0, 1.0)
            bf = bernstein_apply(f, n)
            for p in (1.0, 2.0):
                rows_stab.append(
                    {"function": f.name, "scale": n, "p": p,
                     "lhs": lp_norm(bf, UNIT, p, q=Q_INTERVAL),
                     "rhs": discrete_seminorm(f, nodes, p)}
                )
    rows_rate = []
    for f in _deriv_members_interval():
        d2 = {p: lp_norm(PointwiseFunction(eval=f.deriv[1], name="dd"), UNIT, p, q=Q_INTERVAL) for p in (1.0, 2.0)}
        for n in (8, 16, 32, 64, 128, 256):
            fam = bernstein_family(n)
            for p in (1.0, 2.0):
                err = operator_error(f, fam, UNIT, p, Q_INTERVAL)
                rows_rate.append(
                    {"function": f.name, "scale": n, "p": p, "lhs": err * n, "rhs": d2[p]}
                )
    upper_reports = []
    for f in _interval_members():
        rep = check_upper_estimate(
            f,
            lambda n: bernstein_family(int(n)),
            UNIT,
            lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
            2,
            2,
            2.0,
            [16, 64, 256],
            steklov_scale=lambda n: 1.0 / math.sqrt(n),
            omega_step=lambda n: 1.0 / math.sqrt(n),
            q=Q_INTERVAL,
            name=f"bernstein-upper[{f.name}]",
            frozen_key="bernstein_upper_C",
        )
        upper_reports.append(rep)
    for trivial in (constant_function(2.0), _affine()):
        rep = check_upper_estimate(
            trivial,
            lambda n: bernstein_family(int(n)),
            UNIT,
            lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
            2,
            2,
            2.0,
            [16, 64],
            steklov_scale=lambda n: 1.0 / math.sqrt(n),
            omega_step=lambda n: 1.0 / math.sqrt(n),
            q=Q_INTERVAL,
            name=f"bernstein-upper[{trivial.name}]",
        )
        upper_reports.append(rep)
    return [
        build_report("bernstein-discrete-stability", rows_stab, bound=1.0, slack_abs=1e-9),
        build_report("bernstein-sobolev-rate", rows_rate, frozen_key="bernstein_rate_K3"),
    ] + upper_reports


def check_shannon():
    rows_interp = []
    g = sinc_packet()
    for W in (8.0, 16.0, 64.0):
        fam = _shannon_builder(g)(W)
        applied = fam.apply(g)
        lat = np.arange(-int(4 * W), int(4 * W) + 1, dtype=float) / W
        gap = float(np.max(np.abs(applied.eval(lat) - g.eval(lat))))
        rows_interp.append({"function": g.name, "scale": W, "lhs": gap, "rhs": 1e-12})
    reports = [build_report("shannon-lattice-interpolation", rows_interp, bound=1.0, slack_abs=0.0, zero_tol=0.0)]
    for f in _smooth_line_trio():
        dom = _line_dom(f)
        rep = check_upper_estimate(
            f,
            _shannon_builder(f),
            dom,
            lambda W, dom=dom: uniform_line_nodes(W, dom),
            1,
            1,
            2.0,
            [8.0, 16.0, 32.0, 64.0],
            q=Q_LINE,
            name=f"shannon-upper[{f.name}]",
            frozen_key="shannon_upper_C",
        )
        reports.append(rep)
    return reports


def check_sampling():
    rows_cond = []
    for order in (2, 3, 4):
        kernel = bspline_kernel(order)
        pu = partition_of_unity_defect(kernel)
        rows_cond.append({"kernel": kernel.name, "check": "partition-of-unity", "lhs": pu, "rhs": 1e-10})
        sf_order = moment_condition_order(kernel)
        sf = strang_fix_defect(kernel, sf_order)
        rows_cond.append(
            {"kernel": kernel.name, "check": f"vanishing-moments(r={sf_order})", "lhs": sf, "rhs": 1e-10}
        )
    notes = (
        "even moments of nonnegative kernels cannot vanish: measured second moments "
        + ", ".join(
            f"bspline{m}={strang_fix_defect(bspline_kernel(m), 3):.4f}" for m in (2, 3, 4)
        )
    )
    reports = [build_report("kernel-conditions", rows_cond, bound=1.0, slack_abs=0.0, zero_tol=0.0, notes=notes)]

    rows_stab, rows_jack = [], []
    smooth = _smooth_line_trio()
    for order in (2, 3, 4):
        kernel = bspline_kernel(order)
        m0 = m0_moment(kernel)
        r_ok = moment_condition_order(kernel)
        for f in smooth:
            dom = _line_dom(f)
            for W in (8.0, 32.0, 128.0):
                fam = generalized_family(W, kernel)
                applied = fam.apply(f)
                nodes = uniform_line_nodes(W, dom)
                for p in (1.0, 2.0):
                    lhs = lp_norm(applied, dom, p, q=Q_LINE)
                    rhs = m0 ** (1.0 - 1.0 / p) * 1.0 ** (1.0 / p) * discrete_seminorm(f, nodes, p)
                    rows_stab.append(
                        {"function": f.name, "kernel": kernel.name, "scale": W, "p": p,
                         "lhs": lhs, "rhs": rhs}
                    )
            for r in range(1, min(r_ok, len(f.deriv)) + 1):
                dom = _line_dom(f)
                dnorm = lp_norm(PointwiseFunction(eval=f.deriv[r - 1], name="d"), dom, 2.0, q=Q_LINE)
                for W in (8.0, 32.0, 128.0):
                    fam = generalized_family(W, kernel)
                    err = operator_error(f, fam, dom, 2.0, Q_LINE)
                    bound = 2.0 * m0 * kernel.T**r / math.factorial(r - 1) * W ** (-r) * dnorm
                    rows_jack.append(
                        {"function": f.name, "kernel": kernel.name, "scale": W, "r": r, "p": 2.0,
                         "lhs": err, "rhs": bound}
                    )
    # p=1 with positive f makes the stability bound an exact equality, so the
    # slack is sized to composite-quadrature accuracy rather than 1e-9
    reports.append(build_report("sampling-stability", rows_stab, bound=1.0, slack_abs=1e-8))
    reports.append(build_report("sampling-jackson-literal", rows_jack, bound=1.0, slack_abs=1e-9))

    for f in _smooth_line_trio():
        dom = _line_dom(f)
        rep = check_upper_estimate(
            f,
            lambda W: generalized_family(W, bspline_kernel(3)),
            dom,
            lambda W, dom=dom: uniform_line_nodes(W, dom),
            2,
            2,
            2.0,
            [8.0, 16.0, 32.0, 64.0],
            q=Q_LINE,
            name=f"sampling-upper[{f.name}]",
            frozen_key="sampling_upper_C",
        )
        reports.append(rep)
    aff = _affine()
    rep = check_upper_estimate(
        aff,
        lambda W: generalized_family(W, bspline_kernel(2)),
        Domain.line(-4.0, 4.0),
        lambda W: uniform_line_nodes(W, Domain.line(-4.0, 4.0)),
        2,
        2,
        2.0,
        [8.0, 32.0],
        q=Q_LINE,
        name="sampling-upper[affine]",
    )
    reports.append(rep)
    return reports


def check_lower_conditional():
    reports = []
    for f in (bspline(4), gaussian_bump()):
        dom = _line_dom(f)
        rep = check_lower_estimate(
            f,
            _shannon_builder(f),
            dom,
            lambda W, dom=dom: uniform_line_nodes(W, dom),
            1,
            1,
            2.0,
            [8.0, 16.0, 32.0, 64.0],
            K2=1.0,
            q=Q_LINE,
            name=f"lower-conditional[{f.name}]",
        )
        reports.append(rep)
    return reports


def check_dyadic_sum():
    reports = []
    for f in (bspline(4), gaussian_bump()):
        dom = _line_dom(f)
        rep, k4_rows = dyadic_sum_bound(
            f,
            _shannon_builder(f),
            dom,
            lambda W, dom=dom: uniform_line_nodes(W, dom),
            1,
            1,
            2.0,
            64.0,
            q=Q_LINE,
            name=f"dyadic-sum[{f.name}]",
            frozen_key="dyadic_sum_C",
        )
        reports.append(rep)
        k4_table = [
            dict(row, lhs=row["deriv_norm"], rhs=2.0 ** (row["s"] * row["nu"]) * row["value_norm"])
            for row in k4_rows
            if row["value_norm"] > 1e-8  # below that the ratio is quadrature noise
        ]
        reports.append(
            build_report(
                f"dyadic-derivative-hypothesis[{f.name}]",
                k4_table,
                notes="measured ratio is the Bernstein-type constant of dyadic differences",
            )
        )
    aff = _affine()
    rep, _ = dyadic_sum_bound(
        aff,
        lambda n: bernstein_family(int(n)),
        UNIT,
        lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
        2,
        2,
        2.0,
        64.0,
        q=Q_INTERVAL,
        name="dyadic-sum[affine-bernstein]",
    )
    reports.append(rep)
    return reports


def check_realization():
    reports = []
    for f in (bspline(4), gaussian_bump()):
        dom = _line_dom(f)
        up, lo = realization_check(
            f,
            lambda W: generalized_family(W, bspline_kernel(3)),
            dom,
            lambda W, dom=dom: uniform_line_nodes(W, dom),
            1,
            1,
            2.0,
            [8.0, 16.0, 32.0, 64.0],
            q=Q_LINE,
            name=f"realization-sampling[{f.name}]",
            frozen_upper="realization_upper_C",
            frozen_lower="realization_lower_C",
        )
        reports.extend([up, lo])
    for f in (gaussian_bump(0.5, 0.2), sobolev_sample(2)):
        up, lo = realization_check(
            f,
            lambda n: bernstein_family(int(n)),
            UNIT,
            lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
            2,
            2,
            2.0,
            [16, 64, 256],
            effective_scale=math.sqrt,
            q=Q_INTERVAL,
            name=f"realization-bernstein[{f.name}]",
            frozen_upper="realization_upper_C",
            frozen_lower="realization_lower_C",
        )
        reports.extend([up, lo])
    return reports


def check_series_bound():
    reports = []
    for f in (sinc_packet(), gaussian_bump()):
        dom = _line_dom(f)
        rep = series_bound_check(
            f,
            _shannon_builder(f),
            dom,
            2.0,
            1,
            8.0,
            8,
            q=Q_LINE,
            name=f"series-bound[{f.name}]",
            frozen_key="series_bound_C",
        )
        reports.append(rep)
    return reports


def check_rathore_ratio():
    reports = []
    cases = [
        (power_singularity(0.25), Domain.line(-0.5, 1.5), QuadratureConfig(cells=2**14), "comparable"),
        (gaussian_bump(0.5, 0.2), UNIT, Q_INTERVAL, "smooth"),
        (_affine(), UNIT, Q_INTERVAL, "degenerate"),
    ]
    deltas = [2.0 ** (-k) for k in range(3, 9)]
    for f, dom, q, label in cases:
        rep = modulus_ratio(f, dom, 1, deltas, 2.0, q)
        rows = [
            {"function": f.name, "scale": d, "lhs": v if np.isfinite(v) else 0.0, "rhs": 1.0}
            for d, v in rep.samples
        ]
        if rep.degenerate:
            rows = [{"function": f.name, "scale": d, "lhs": 0.0, "rhs": 0.0} for d, _ in rep.samples]
        note = f"step-up comparability table ({label}); fitted order "
        note += "n/a" if math.isnan(rep.fitted_order) else f"{rep.fitted_order:.2f}"
        reports.append(build_report(f"modulus-step-up-ratio[{f.name}]", rows, notes=note))
    return reports


CHECKS = {
    "moduli-inequalities": check_moduli_inequalities,
    "steklov-oracle": check_steklov_oracle,
    "steklov-approximation": check_steklov_approximation,
    "discrete-seminorm": check_discrete_seminorm,
    "steklov-vs-tau-discrete": check_steklov_vs_tau_discrete,
    "kfunctional-equivalence": check_kfunctional,
    "sharpness-vs-tau": check_sharpness_tau,
    "bernstein-suite": check_bernstein,
    "shannon-suite": check_shannon,
    "sampling-suite": check_sampling,
    "lower-conditional": check_lower_conditional,
    "dyadic-sum": check_dyadic_sum,
    "realization": check_realization,
    "series-bound": check_series_bound,
    "rathore-ratio": check_rathore_ratio,
}


def run_checkers(names) -> list:
    if names == ["all"] or names == "all":
        names = list(CHECKS)
    reports = []
    for name in names:
        if name not in CHECKS:
            raise ConfigError(f"unknown checker {name!r}; known: {sorted(CHECKS)} or 'all'")
        reports.extend(CHECKS[name]())
    return reports


def exit_code(reports) -> int:
    return 1 if any(r.verdict == "violated" for r in reports) else 0
