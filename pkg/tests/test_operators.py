import math

import numpy as np
import pytest

from smoothness_lab import Domain, DomainError, ConfigError, QuadratureConfig, builtin, constant_function, from_callable, lp_norm
from smoothness_lab.discrete import equispaced_interval_nodes, discrete_seminorm
from smoothness_lab.operators import (
    bernstein_apply,
    bernstein_derivative,
    bernstein_family,
    bspline_kernel,
    exact_sinc,
    generalized_family,
    generalized_sampling_apply,
    kernel_by_name,
    m0_moment,
    moment_condition_order,
    operator_error,
    partition_of_unity_defect,
    shannon_apply,
    shannon_family,
    strang_fix_defect,
)

UNIT = Domain.interval(0.0, 1.0)


def _ident():
    return from_callable(lambda x: np.asarray(x, dtype=float), name="x")


def _square():
    return from_callable(lambda x: np.asarray(x, dtype=float) ** 2, name="x^2")


# --- Bernstein -------------------------------------------------------------


def test_bernstein_reproduces_constants_exactly():
    b = bernstein_apply(constant_function(2.5), 23)
    xs = np.linspace(0, 1, 17)
    assert np.max(np.abs(b.eval(xs) - 2.5)) == 0.0


def test_bernstein_reproduces_affine():
    b = bernstein_apply(_ident(), 37)
    xs = np.linspace(0, 1, 17)
    assert np.max(np.abs(b.eval(xs) - xs)) < 1e-14


def test_bernstein_square_classical_identity():
    # B_n(t^2)(x) = x^2 + x(1-x)/n
    b = bernstein_apply(_square(), 10)
    assert b.eval(0.5) == pytest.approx(0.275, abs=1e-14)
    xs = np.linspace(0, 1, 33)
    assert np.allclose(b.eval(xs), xs**2 + xs * (1 - xs) / 10, atol=1e-13)


def test_bernstein_large_degree_stable():
    b = bernstein_apply(constant_function(1.0), 2048)
    assert b.eval(0.37) == pytest.approx(1.0, abs=1e-12)


def test_bernstein_derivative_of_square():
    # derivative of x^2 + x(1-x)/n is 2x + (1-2x)/n; at 0.5 with n=10 -> 1.0
    bd = bernstein_derivative(_square(), 10, 1)
    assert bd.eval(0.5) == pytest.approx(1.0, abs=1e-13)


def test_bernstein_derivative_matches_finite_differences():
    f = builtin("gaussian_bump", {"center": 0.5, "width": 0.2})
    n, s = 64, 2
    bd = bernstein_derivative(f, n, s)
    b = bernstein_apply(f, n)
    h = 1e-3
    xs = np.linspace(0.2, 0.8, 7)
    fd = (b.eval(xs + h) - 2 * b.eval(xs) + b.eval(xs - h)) / h**2
    assert np.allclose(bd.eval(xs), fd, rtol=1e-4, atol=1e-6)


def test_bernstein_derivative_of_affine():
    d1 = bernstein_derivative(_ident(), 12, 1)
    assert d1.eval(0.3) == pytest.approx(1.0, abs=1e-13)
    d2 = bernstein_derivative(_ident(), 12, 2)
    assert abs(d2.eval(0.3)) < 1e-12


def test_bernstein_derivative_order_guard():
    with pytest.raises(DomainError):
        bernstein_derivative(_ident(), 4, 5)


def test_bernstein_stability_against_node_seminorm():
    f = builtin("even_denominator")
    for n in (16, 64):
        nodes = equispaced_interval_nodes(n, 0.0, 1.0)
        bf = bernstein_apply(f, n)
        for p in (1.0, 2.0):
            assert lp_norm(bf, UNIT, p) <= discrete_seminorm(f, nodes, p) + 1e-9


def test_bernstein_error_norm_prediction():
    # ||f - B_n f||_2 = ||x(1-x)/n||_2 = 1/(n sqrt(30)) for f = x^2
    n = 10
    err = operator_error(_square(), bernstein_family(n), UNIT, 2.0)
    assert err == pytest.approx(1.0 / (n * math.sqrt(30.0)), rel=0.01)
    err_affine = operator_error(_ident(), bernstein_family(25), UNIT, 2.0)
    assert err_affine < 1e-12


# --- kernels ----------------------------------------------------------------


def test_bspline_kernels_partition_of_unity():
    for order in range(1, 6):
        assert partition_of_unity_defect(bspline_kernel(order)) < 1e-10


def test_bspline_kernels_m0_is_one():
    for order in range(1, 6):
        assert m0_moment(bspline_kernel(order)) == pytest.approx(1.0, abs=1e-10)


def test_m0_homogeneity_and_ripple():
    hat = bspline_kernel(2)
    assert m0_moment(hat.scaled(2.0)) == pytest.approx(2.0, abs=1e-10)

    def ripple_phi(t):
        arr = np.asarray(t, dtype=float)
        base = hat.phi(arr)
        return base + 0.25 * np.where(np.abs(arr) <= 1.0, np.sin(2 * np.pi * arr), 0.0)

    from smoothness_lab.operators import KernelSpec

    ripple = KernelSpec(phi=ripple_phi, support=(-1.0, 1.0), name="ripple")
    assert m0_moment(ripple) > 1.0 + 1e-3


def test_strang_fix_defect_r1_trivially_zero():
    assert strang_fix_defect(bspline_kernel(3), 1) == 0.0


def test_strang_fix_hat_first_moment_vanishes():
    assert strang_fix_defect(bspline_kernel(2), 2) <= 1e-12


def test_strang_fix_second_moments_do_not_vanish():
    # the second shifted moment of a centered B-spline equals order/12 (hat:
    # oscillating up to 1/4); nonnegative kernels cannot do better
    assert strang_fix_defect(bspline_kernel(2), 3) == pytest.approx(0.25, abs=1e-10)
    assert strang_fix_defect(bspline_kernel(3), 3) == pytest.approx(0.25, abs=1e-10)
    assert strang_fix_defect(bspline_kernel(4), 3) == pytest.approx(1.0 / 3.0, abs=1e-10)


def test_moment_condition_order_is_two_for_splines():
    for order in (2, 3, 4, 5):
        assert moment_condition_order(bspline_kernel(order)) == 2
    assert moment_condition_order(bspline_kernel(1)) == 1


def test_kernel_by_name():
    assert kernel_by_name("bspline3").name == "bspline3"
    with pytest.raises(ConfigError):
        kernel_by_name("daubechies4")


# --- Shannon ----------------------------------------------------------------


def test_exact_sinc_zeros_at_integers():
    xs = np.array([-3.0, -1.0, 0.0, 1.0, 7.0, 2.5])
    vals = exact_sinc(xs)
    assert vals[2] == 1.0
    assert np.all(vals[[0, 1, 3, 4]] == 0.0)
    assert vals[5] == pytest.approx(np.sinc(2.5))


def test_shannon_zero_samples_give_zero():
    zero = constant_function(0.0)
    s = shannon_apply(zero, 8.0, trunc_terms=64)
    assert s.eval(0.37) == 0.0


def test_shannon_interpolates_lattice_exactly():
    f = builtin("sinc_packet")
    W = 16.0
    s = shannon_apply(f, W, trunc_terms=256)
    lat = np.arange(-64, 65, dtype=float) / W
    assert np.max(np.abs(s.eval(lat) - f.eval(lat))) < 1e-12


def test_shannon_reconstructs_bandlimited_packet():
    f = builtin("sinc_packet")  # bandwidth 8*pi < pi*W for W = 16
    dom = Domain.line(-16, 16)
    err = operator_error(f, shannon_family(16.0, trunc_terms=1024), dom, 2.0, QuadratureConfig(cells=8192))
    assert err < 1e-12


def test_shannon_tail_metadata_flags_undersized_window():
    f = builtin("sinc_packet")
    small = shannon_apply(f, 16.0, trunc_terms=256)
    big = shannon_apply(f, 16.0, trunc_terms=1024)
    assert small.meta["tail_probe"] > 1e-6
    assert big.meta["tail_probe"] < 1e-12


def test_shannon_trunc_terms_floor():
    with pytest.raises(ConfigError):
        shannon_apply(builtin("sinc_packet"), 8.0, trunc_terms=32)


# --- generalized sampling ----------------------------------------------------


def test_sampling_partition_of_unity_reproduces_constants():
    c = constant_function(2.5)
    s = generalized_sampling_apply(c, 8.0, bspline_kernel(3))
    xs = np.linspace(-2, 2, 41)
    assert np.max(np.abs(s.eval(xs) - 2.5)) < 1e-12


def test_hat_kernel_reproduces_affine():
    s = generalized_sampling_apply(_ident(), 8.0, bspline_kernel(2))
    xs = np.linspace(-2, 2, 41)
    assert np.max(np.abs(s.eval(xs) - xs)) < 1e-13


def test_quadratic_spline_does_not_interpolate():
    g = builtin("gaussian_bump")
    s = generalized_sampling_apply(g, 4.0, bspline_kernel(3))
    node = 0.25
    # the node value mixes three neighbors: phi(0)=3/4, phi(+-1)=1/8
    neighbors = (g.eval(0.0) + g.eval(0.5)) / 8.0 + 0.75 * g.eval(0.25)
    assert s.eval(node) == pytest.approx(neighbors, abs=1e-12)
    assert abs(s.eval(node) - g.eval(node)) > 1e-4


def test_operator_error_checks_domain_kind():
    with pytest.raises(DomainError):
        operator_error(_square(), bernstein_family(8), Domain.line(-1, 1), 2.0)
    with pytest.raises(DomainError):
        operator_error(builtin("gaussian_bump"), shannon_family(8.0, 64), UNIT, 2.0)


def test_operator_error_uses_ae_consistent_difference():
    d = builtin("dirichlet")
    # Bernstein sees the exact node values (all ones) and returns the constant
    # one polynomial, so the a.e. error is exactly the constant one
    err = operator_error(d, bernstein_family(16), UNIT, 2.0)
    assert err == pytest.approx(1.0, abs=1e-12)


def test_jackson_rate_bound_literal_for_hat():
    kernel = bspline_kernel(2)
    f = builtin("gaussian_bump")
    dom = Domain.line(-12, 12)
    m0 = m0_moment(kernel)
    r = 2
    dnorm = lp_norm(from_callable(f.deriv[1], name="f''"), dom, 2.0)
    for W in (8.0, 32.0):
        err = operator_error(f, generalized_family(W, kernel), dom, 2.0)
        bound = 2.0 * m0 * kernel.T**r / math.factorial(r - 1) * W ** (-r) * dnorm
        assert err <= bound
