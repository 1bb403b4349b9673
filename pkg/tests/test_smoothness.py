import math

import numpy as np
import pytest

from smoothness_lab import (
    CapabilityError,
    Domain,
    DomainError,
    ModulusRequest,
    QuadratureConfig,
    builtin,
    constant_function,
    finite_difference,
    from_callable,
    local_modulus,
    lp_norm,
    modulus_of_smoothness,
    modulus_ratio,
    tau_modulus,
)

UNIT = Domain.interval(0.0, 1.0)
WIDE = Domain.interval(0.0, 2.0)


def _ident():
    return from_callable(lambda x: np.asarray(x, dtype=float), name="x")


def _square():
    return from_callable(lambda x: np.asarray(x, dtype=float) ** 2, name="x^2")


def test_finite_difference_of_quadratic():
    assert finite_difference(_square(), 0.0, 1.0, 2) == pytest.approx(2.0, abs=1e-14)


def test_finite_difference_annihilates_affine():
    aff = from_callable(lambda x: 3.0 * np.asarray(x, dtype=float) - 1.0, name="aff")
    for x in (0.0, 0.7, -2.3):
        assert finite_difference(aff, x, 0.5, 2) == pytest.approx(0.0, abs=1e-13)


def test_finite_difference_exponential_third_order():
    ex = from_callable(lambda x: np.exp(np.asarray(x, dtype=float)), name="exp")
    # oracle: expand the alternating binomial sum directly
    oracle = sum((-1) ** (3 - k) * math.comb(3, k) * math.exp(k) for k in range(4))
    got = finite_difference(ex, 0.0, 1.0, 3)
    assert got == pytest.approx(oracle, rel=1e-14)
    assert got == pytest.approx((math.e - 1.0) ** 3, rel=1e-12)


def test_finite_difference_domain_guard():
    with pytest.raises(DomainError):
        finite_difference(_square(), 0.9, 0.1, 2, dom=UNIT)


def test_modulus_of_constant_vanishes():
    c = constant_function(4.2)
    for r in (1, 2):
        assert modulus_of_smoothness(c, WIDE, ModulusRequest(r, 0.25, 2.0)) == 0.0


def test_modulus_order_zero_is_plain_norm():
    f = builtin("gaussian_bump")
    dom = Domain.line(-10, 10)
    m0 = modulus_of_smoothness(f, dom, ModulusRequest(0, 0.25, 2.0))
    assert m0 == pytest.approx(lp_norm(f, dom, 2.0), rel=1e-12)


def test_modulus_delta_zero_convention():
    assert modulus_of_smoothness(_square(), UNIT, ModulusRequest(1, 0.0, 2.0)) == 0.0


def test_sup_norm_modulus_of_sine_matches_brute_force():
    sin = from_callable(lambda x: np.sin(np.pi * np.asarray(x, dtype=float)), name="sin")
    got = modulus_of_smoothness(sin, WIDE, ModulusRequest(1, 0.1, math.inf, t_grid_size=201))
    hs = np.linspace(1e-4, 0.1, 400)
    brute = 0.0
    for h in hs:
        xs = np.linspace(0, 2 - h, 4001)
        brute = max(brute, float(np.max(np.abs(np.sin(np.pi * (xs + h)) - np.sin(np.pi * xs)))))
    assert got == pytest.approx(brute, rel=1e-3)
    assert got <= 0.1 * np.pi  # Lipschitz bound delta * ||f'||_inf


def test_modulus_monotone_in_delta():
    f = builtin("sobolev_sample", {"r": 2})
    vals = [
        modulus_of_smoothness(f, UNIT, ModulusRequest(1, d, 2.0, h_grid_size=32))
        for d in (0.05, 0.1, 0.2, 0.4)
    ]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_modulus_rejects_too_large_delta_on_interval():
    with pytest.raises(DomainError):
        modulus_of_smoothness(_square(), UNIT, ModulusRequest(2, 0.75, 2.0))


def test_power_singularity_modulus_exponent():
    f = builtin("power_singularity", {"alpha": 0.25})
    dom = Domain.line(-0.5, 1.5)
    q = QuadratureConfig(cells=2**15)
    deltas = [2.0 ** (-k) for k in range(3, 10)]
    vals = np.array(
        [modulus_of_smoothness(f, dom, ModulusRequest(1, d, 2.0, h_grid_size=32), q) for d in deltas]
    )
    slope = np.polyfit(np.log(deltas), np.log(vals), 1)[0]
    assert slope == pytest.approx(0.25, abs=0.03)  # 1/p - alpha


def test_grid_refinement_stability():
    f = builtin("gaussian_bump")
    dom = Domain.line(-10, 10)
    base = modulus_of_smoothness(f, dom, ModulusRequest(1, 0.25, 2.0, h_grid_size=64))
    fine = modulus_of_smoothness(f, dom, ModulusRequest(1, 0.25, 2.0, h_grid_size=128))
    assert abs(base - fine) / fine < 0.01


def test_local_modulus_constant_and_dirichlet():
    assert local_modulus(constant_function(2.0), UNIT, 1, 0.5, 0.2) == 0.0
    d = builtin("dirichlet")
    assert local_modulus(d, UNIT, 1, 0.3, 0.05) == 1.0


def test_local_modulus_absolute_value_oracle():
    absf = from_callable(lambda x: np.abs(np.asarray(x, dtype=float)), name="|x|")
    dom = Domain.line(-4, 4)
    # dense-grid oracle value for the kink: half the window width
    got = local_modulus(absf, dom, 1, 0.0, 1.0, t_grid_size=257)
    assert got == pytest.approx(0.5, abs=1e-3)


def test_tau_on_pathological_members():
    d = builtin("dirichlet")
    ed = builtin("even_denominator")
    for p in (1.0, 2.0, 4.0):
        assert tau_modulus(d, UNIT, 1, 1 / 16, p) == pytest.approx(1.0, abs=1e-12)
        assert tau_modulus(ed, UNIT, 1, 1 / 16, p) == pytest.approx(1.0, abs=1e-12)
    wide = Domain.interval(0.0, 2.0)
    assert tau_modulus(d, wide, 1, 1 / 16, 2.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_tau_of_constant_vanishes():
    assert tau_modulus(constant_function(1.0), UNIT, 1, 0.1, 2.0) == 0.0


def test_tau_unbounded_without_oracle_raises():
    f = builtin("power_singularity", {"alpha": 0.25})
    with pytest.raises(CapabilityError):
        tau_modulus(f, UNIT, 1, 0.1, 2.0)


def test_tau_rejects_infinite_p():
    with pytest.raises(DomainError):
        tau_modulus(constant_function(1.0), UNIT, 1, 0.1, math.inf)


def test_modulus_ratio_affine_degenerate():
    aff = from_callable(lambda x: 2.0 * np.asarray(x, dtype=float), name="aff")
    rep = modulus_ratio(aff, UNIT, 1, [0.25, 0.125, 0.0625, 0.03125], 2.0)
    assert rep.degenerate
    assert all(not np.isfinite(v) for _, v in rep.samples)


def test_modulus_ratio_power_singularity_bounded():
    f = builtin("power_singularity", {"alpha": 0.25})
    dom = Domain.line(-0.5, 1.5)
    q = QuadratureConfig(cells=2**13)
    rep = modulus_ratio(f, dom, 1, [2.0 ** (-k) for k in range(3, 9)], 2.0, q)
    assert not rep.degenerate
    assert rep.max_value < 2.0
    assert abs(rep.fitted_order) < 0.15  # ratio is flat: both moduli share the exponent


def test_modulus_ratio_smooth_function_grows():
    sin = from_callable(lambda x: np.sin(np.pi * np.asarray(x, dtype=float)), name="sin")
    rep = modulus_ratio(sin, WIDE, 1, [2.0 ** (-k) for k in range(2, 8)], 2.0)
    assert rep.fitted_order == pytest.approx(-1.0, abs=0.1)
    assert rep.max_value > 20.0


def test_tau_grid_refinement_stability():
    f = builtin("sobolev_sample", {"r": 2})
    coarse = tau_modulus(f, UNIT, 1, 0.125, 2.0, t_grid_size=129)
    fine = tau_modulus(f, UNIT, 1, 0.125, 2.0, t_grid_size=257)
    assert abs(coarse - fine) / fine < 0.01
