import math

import pytest

from smoothness_lab import CapabilityError, Domain, QuadratureConfig, builtin, constant_function
from smoothness_lab.checks import (
    build_report,
    check_lower_estimate,
    check_upper_estimate,
    dyadic_sum_bound,
    frozen_constant,
    realization_check,
    series_bound_check,
)
from smoothness_lab.discrete import equispaced_interval_nodes, uniform_line_nodes
from smoothness_lab.operators import bernstein_family, bspline_kernel, generalized_family, shannon_family

UNIT = Domain.interval(0.0, 1.0)
Q = QuadratureConfig(cells=2048)


def test_build_report_verdicts():
    holds = build_report("x", [{"lhs": 1.0, "rhs": 2.0}], bound=1.0)
    assert holds.verdict == "holds_with_constant" and holds.max_ratio == 0.5

    violated = build_report("x", [{"lhs": 2.0, "rhs": 1.0}], bound=1.0, slack_abs=1e-9)
    assert violated.verdict == "violated"

    degenerate = build_report("x", [{"lhs": 0.0, "rhs": 0.0}])
    assert degenerate.verdict == "degenerate" and math.isnan(degenerate.max_ratio)

    falsified = build_report("x", [{"lhs": 0.5, "rhs": 0.0}])
    assert falsified.verdict == "violated" and falsified.max_ratio == math.inf


def test_build_report_frozen_comparison(monkeypatch):
    import smoothness_lab.checks as checks

    monkeypatch.setattr(checks, "_FROZEN_CACHE", {"demo_key": 2.0})
    ok = build_report("x", [{"lhs": 2.0, "rhs": 1.0}], frozen_key="demo_key")
    assert ok.verdict == "holds_with_constant"
    over = build_report("x", [{"lhs": 2.2, "rhs": 1.0}], frozen_key="demo_key")
    assert over.verdict == "violated"  # 2.2 > 2.0 * 1.05


def test_frozen_constants_file_is_shipped():
    # calibration freezes these; the regression suite needs them present
    assert frozen_constant("bernstein_upper_C") is not None
    assert frozen_constant("kfunc_upper_C") is not None
    assert frozen_constant("no_such_key") is None


def test_upper_estimate_smooth_bernstein():
    f = builtin("gaussian_bump", {"center": 0.5, "width": 0.2})
    rep = check_upper_estimate(
        f,
        lambda n: bernstein_family(int(n)),
        UNIT,
        lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
        2,
        2,
        2.0,
        [16, 64],
        steklov_scale=lambda n: 1.0 / math.sqrt(n),
        q=Q,
    )
    assert rep.verdict == "holds_with_constant"
    assert 0 < rep.max_ratio < 1.0
    assert all({"function", "operator", "scale", "p", "r", "s"} <= set(r) for r in rep.rows)


def test_upper_estimate_constant_is_degenerate():
    rep = check_upper_estimate(
        constant_function(3.0),
        lambda n: bernstein_family(int(n)),
        UNIT,
        lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
        2,
        2,
        2.0,
        [16],
        steklov_scale=lambda n: 1.0 / math.sqrt(n),
        q=Q,
    )
    assert rep.verdict == "degenerate"


def test_lower_estimate_is_conditional_report():
    f = builtin("bspline", {"order": 4})
    dom = Domain.line(-4, 4)
    rep = check_lower_estimate(
        f,
        lambda W: shannon_family(W, 256),
        dom,
        lambda W: uniform_line_nodes(W, dom),
        1,
        1,
        2.0,
        [8.0, 16.0],
        K2=1.0,
        q=Q,
    )
    assert rep.conditional
    assert "K2" in rep.rows[0]


def test_dyadic_sum_bound_and_hypothesis_rows():
    f = builtin("bspline", {"order": 4})
    dom = Domain.line(-4, 4)
    rep, k4 = dyadic_sum_bound(
        f,
        lambda W: shannon_family(W, 256),
        dom,
        lambda W: uniform_line_nodes(W, dom),
        1,
        1,
        2.0,
        16.0,
        q=Q,
    )
    assert rep.verdict in ("holds_with_constant", "degenerate")
    assert rep.rows[0]["lhs"] <= 4.0 * rep.rows[0]["rhs"]
    assert all(row["nu"] >= 1 for row in k4)


def test_realization_two_sided():
    f = builtin("gaussian_bump", {"center": 0.5, "width": 0.2})
    up, lo = realization_check(
        f,
        lambda n: bernstein_family(int(n)),
        UNIT,
        lambda n: equispaced_interval_nodes(int(n), 0.0, 1.0),
        2,
        2,
        2.0,
        [16, 64],
        effective_scale=math.sqrt,
        q=Q,
    )
    assert up.verdict == "holds_with_constant"
    assert lo.verdict == "holds_with_constant"
    assert up.max_ratio * lo.max_ratio >= 1.0  # bands bracket a common value
    assert "K5" in up.rows[0]


def test_series_bound_requires_interpolation():
    f = builtin("gaussian_bump")
    dom = Domain.line(-12, 12)
    with pytest.raises(CapabilityError):
        series_bound_check(
            f,
            lambda W: generalized_family(W, bspline_kernel(3)),
            dom,
            2.0,
            1,
            8.0,
            4,
            q=Q,
        )


def test_series_bound_shannon_converges():
    f = builtin("bspline", {"order": 4})
    dom = Domain.line(-4, 4)

    def build(W):
        return shannon_family(W, trunc_terms=min(1024, max(64, int(W * 4) + 64)))

    rep8 = series_bound_check(f, build, dom, 2.0, 1, 8.0, 8, q=Q)
    rep16 = series_bound_check(f, build, dom, 2.0, 1, 8.0, 16, q=Q)
    assert rep8.verdict == "holds_with_constant"
    # doubling the truncation changes the series total by under 1%
    assert abs(rep8.rows[0]["rhs"] - rep16.rows[0]["rhs"]) / rep16.rows[0]["rhs"] < 0.01
    assert rep8.rows[0]["tail_fraction"] < 0.01
