"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines.
The full checker battery runs once (module-scoped) and individual criteria
inspect its reports; the three closed-form examples re-run directly.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from smoothness_lab import Domain, from_callable
from smoothness_lab.checks import frozen_constant
from smoothness_lab.operators import bernstein_family, bspline_kernel, operator_error, strang_fix_defect
from smoothness_lab.reproduce import reproduce_example
from smoothness_lab.verify import run_checkers

UNIT = Domain.interval(0.0, 1.0)
SLACK = 1.05  # frozen-constant regression slack


@contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} [{title}]: FAIL")
        raise
    print(f"ACCEPTANCE {number} [{title}]: PASS")


@pytest.fixture(scope="module")
def full_run():
    t0 = time.time()
    reports = run_checkers("all")
    return {r.name: r for r in reports}, time.time() - t0


def _group_drift(rows, key):
    groups = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row["ratio"])
    out = {}
    for k, ratios in groups.items():
        gm = math.exp(sum(math.log(r) for r in ratios) / len(ratios))
        out[k] = max(abs(r / gm - 1.0) for r in ratios)
    return out


def test_criterion_1_rational_indicator_closed_form():
    with criterion(1, "rational-indicator closed form"):
        rep = reproduce_example(1)
        assert rep.ok, rep.details
        assert rep.elapsed_seconds < 5.0
        for row in rep.rows:
            assert row["omega"] == 0.0
            assert abs(row["semi_discrete"] - row["literal_node_sum"]) <= 1e-9
            assert abs(row["tau"] - 1.0) <= 1e-9
            assert abs(row["semi_discrete"] - row["tau"]) <= 2.0 / row["n"]


def test_criterion_2_strict_separation():
    with criterion(2, "even-denominator strict separation"):
        rep = reproduce_example(2)
        assert rep.ok, rep.details
        assert rep.elapsed_seconds < 5.0
        for row in rep.rows:
            assert row["semi_discrete"] == 0.0
            assert abs(row["tau"] - 1.0) <= 1e-9
            assert row["separation_ratio"] < 1e-9


def test_criterion_3_singularity_decay_rates():
    with criterion(3, "power-singularity decay rates"):
        rep = reproduce_example(3)
        assert rep.ok, rep.details
        assert rep.elapsed_seconds < 60.0
        for row in rep.rows:
            assert abs(row["total_order"] - row["expected_order"]) <= 0.05
            assert abs(row["discrete_order"] - row["expected_order"]) <= 0.08
            assert abs(row["omega_order"] - row["expected_order"]) <= 0.08


def test_criterion_4_steklov_oracle_equivalence(full_run):
    reports, _ = full_run
    with criterion(4, "iterated-average reduction vs nested oracle"):
        agree = reports["steklov-reduction-agreement"]
        assert agree.verdict == "holds_with_constant"
        assert len(agree.rows) == 15  # 5 smooth functions x r in {1,2,3}
        assert all(row["lhs"] <= 1e-6 for row in agree.rows)
        const = reports["steklov-constant-reproduction"]
        assert {row["r"] for row in const.rows} == {1, 2, 3, 4, 5}
        assert all(row["lhs"] <= 1e-12 for row in const.rows)


def test_criterion_5_steklov_property_suite(full_run):
    reports, _ = full_run
    with criterion(5, "average error/derivative/pointwise properties"):
        err = reports["steklov-error-vs-modulus"]
        deriv = reports["steklov-derivative-vs-modulus"]
        assert err.verdict == "holds_with_constant"
        assert deriv.verdict == "holds_with_constant"
        assert err.max_ratio <= frozen_constant("steklov_error_ratio") * SLACK
        assert deriv.max_ratio <= frozen_constant("steklov_derivative_ratio") * SLACK
        # drift across delta in {2^-2..2^-8} stays within +-20% for members
        # whose natural scale is compatible with the coarsest delta; the
        # bandwidth-8pi packet saturates at delta=1/4 and is bounded instead
        unit_scale = {"gaussian_bump", "bspline[4]"}
        for rows, keyfn in (
            (err.rows, lambda r: (r["function"], r["r"])),
            (deriv.rows, lambda r: (r["function"], r["r"], r["s"])),
        ):
            drift = _group_drift([r for r in rows if r["function"] in unit_scale], keyfn)
            assert drift, "expected drift groups"
            assert max(drift.values()) <= 0.20
        pointwise = reports["steklov-pointwise-local"]
        assert pointwise.verdict == "holds_with_constant"
        assert all(row["lhs"] <= row["rhs"] + 1e-9 for row in pointwise.rows)


def test_criterion_6_classical_moduli_inequalities(full_run):
    reports, _ = full_run
    with criterion(6, "classical moduli inequalities"):
        for name in (
            "modulus-order-comparison",
            "modulus-derivative-bound",
            "modulus-below-averaged",
            "averaged-below-supnorm",
        ):
            rep = reports[name]
            assert rep.verdict != "violated"
            assert all(row["lhs"] <= row["rhs"] + 1e-9 for row in rep.rows), name


def test_criterion_7_bernstein_suite(full_run):
    reports, _ = full_run
    with criterion(7, "bernstein stability, rate prediction, upper estimate"):
        stab = reports["bernstein-discrete-stability"]
        assert stab.verdict == "holds_with_constant"
        assert all(row["lhs"] <= row["rhs"] + 1e-9 for row in stab.rows)
        # ||f - B_n f||_2 for f = x^2 equals ||x(1-x)/n||_2 = 1/(n sqrt(30))
        square = from_callable(lambda x: np.asarray(x, dtype=float) ** 2, name="x^2")
        for n in (10, 50):
            err = operator_error(square, bernstein_family(n), UNIT, 2.0)
            assert abs(err - 1.0 / (n * math.sqrt(30.0))) <= 0.01 / (n * math.sqrt(30.0))
        limit = frozen_constant("bernstein_upper_C") * SLACK
        for name, rep in reports.items():
            if name.startswith("bernstein-upper[") and rep.verdict != "degenerate":
                assert rep.verdict == "holds_with_constant"
                assert rep.max_ratio <= limit


def test_criterion_8_generalized_sampling_suite(full_run):
    reports, _ = full_run
    with criterion(8, "sampling kernels: unity, moments, literal rate bound"):
        cond = reports["kernel-conditions"]
        pu_rows = [r for r in cond.rows if r["check"] == "partition-of-unity"]
        assert {r["kernel"] for r in pu_rows} == {"bspline2", "bspline3", "bspline4"}
        assert all(r["lhs"] <= 1e-10 for r in pu_rows)
        moment_rows = [r for r in cond.rows if r["check"].startswith("vanishing-moments")]
        assert all(r["lhs"] <= 1e-10 for r in moment_rows)
        jack = reports["sampling-jackson-literal"]
        assert jack.verdict == "holds_with_constant"
        assert jack.max_ratio <= 1.0
        assert all(row["lhs"] <= row["rhs"] + 1e-9 for row in jack.rows)
        stab = reports["sampling-stability"]
        assert stab.verdict == "holds_with_constant"


@pytest.mark.xfail(
    strict=True,
    reason=(
        "vanishing moments of order j < spline order are unattainable for "
        "orders 3-4: a nonnegative partition-of-unity kernel has constant "
        "second shifted moment order/12 (measured 0.25 and 1/3), so only "
        "j=1 can vanish; the stated tolerance holds for order 2 alone"
    ),
)
def test_criterion_8_strang_fix_as_stated():
    with criterion("8b", "vanishing moments for all j < spline order (as stated)"):
        for order in (2, 3, 4):
            assert strang_fix_defect(bspline_kernel(order), order) <= 1e-10


def test_criterion_9_shannon_suite(full_run):
    reports, _ = full_run
    with criterion(9, "cardinal series: interpolation and upper estimate"):
        interp = reports["shannon-lattice-interpolation"]
        assert all(row["lhs"] <= 1e-12 for row in interp.rows)
        limit = frozen_constant("shannon_upper_C") * SLACK
        uppers = [rep for name, rep in reports.items() if name.startswith("shannon-upper[")]
        assert len(uppers) == 3
        for rep in uppers:
            assert rep.verdict == "holds_with_constant"
            assert rep.max_ratio <= limit


def test_criterion_10_kfunctional_equivalence(full_run):
    reports, _ = full_run
    with criterion(10, "K-functional equivalence band and sharpness"):
        upper = reports["kfunctional-vs-modulus-upper"]
        lower = reports["kfunctional-vs-modulus-lower"]
        assert upper.verdict == "holds_with_constant"
        assert lower.verdict == "holds_with_constant"
        assert upper.max_ratio <= frozen_constant("kfunc_upper_C") * SLACK
        assert lower.max_ratio <= frozen_constant("kfunc_lower_C") * SLACK
        sharp = reports["semi-discrete-below-averaged"]
        assert sharp.verdict == "holds_with_constant"
        assert sharp.max_ratio <= frozen_constant("sharpness_tau_C") * SLACK
        witness = [r for r in sharp.rows if r["function"].endswith("@odd-nodes")]
        assert witness and all(r["ratio"] < 0.01 for r in witness)


def test_criterion_11_full_verification_battery(full_run):
    reports, elapsed = full_run
    with criterion(11, "full checker battery: runtime, verdicts, degeneracy"):
        assert elapsed < 600.0, f"verify all took {elapsed:.0f}s"
        violated = [name for name, r in reports.items() if r.verdict == "violated"]
        assert violated == []
        degenerate = [name for name, r in reports.items() if r.verdict == "degenerate"]
        assert len(degenerate) >= 3, degenerate
        # the degenerate verdicts are the trivial-input cases, by design
        assert any("const" in name or "affine" in name for name in degenerate)
