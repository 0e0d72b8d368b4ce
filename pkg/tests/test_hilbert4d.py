from math import pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwlab import hilbert4d as h
from cwlab.group import cayley_inv, exp_element, random_element, random_lie_params, upsilon
from cwlab.hilbert4d import BasisIndex, CoeffVector, QuadratureSpec
from cwlab.matrices import dagger, det2

ONE = BasisIndex(0, 0, 0, 0)


def interior(rng, n):
    return 0.6 * h.sample_cartan(rng, n)


def test_norm_const_examples():
    for lam in range(4, 9):
        assert h.norm_const(lam, 0, 0) == 1
    assert np.isclose(h.norm_const(4, 1, 0), 2)
    for j2 in range(4):
        vals = [h.norm_const(5, j2, m) for m in range(6)]
        assert all(a < b for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        h.norm_const(3, 0, 0)


def test_c_lambda():
    assert np.isclose(h.c_lambda(4), 12 / pi**4)


def test_basis_examples(rng):
    Z = interior(rng, 5)
    assert np.allclose(h.basis_fn(4, ONE, Z), 1)
    idx = BasisIndex(3, 1, 1, -1)
    c = 0.7 - 0.2j
    assert np.allclose(h.basis_fn(4, idx, c * Z), c**idx.degree * h.basis_fn(4, idx, Z))
    for n in range(7):
        assert len(h.basis_indices(n, n)) == (n + 1) * (n + 2) * (n + 3) // 6
    with pytest.raises(ValueError):
        BasisIndex(1, 0, 1, 2)


@pytest.mark.parametrize("lam", [4, 5])
def test_unit_norm(lam):
    one = h.basis_evaluable(lam, ONE)
    assert abs(h.inner_product(lam, one, one) - 1) <= 1e-12


@pytest.mark.parametrize("lam", [4, 5])
def test_gram_degree_four(lam):
    idx = h.basis_indices(4)
    G = h.gram_matrix(lam, [h.basis_evaluable(lam, i) for i in idx])
    assert np.max(np.abs(G - np.eye(len(idx)))) <= 1e-6


def test_mc_agrees_with_gauss():
    lam = 5
    idx = h.basis_indices(1)
    fs = [h.basis_evaluable(lam, i) for i in idx]
    est, err = h.gram_matrix(lam, fs, spec=QuadratureSpec(mode="mc", mc_samples=200_000, seed=3))
    exact = h.gram_matrix(lam, fs)
    z = np.abs(est - exact) / np.maximum(err, 1e-300)
    assert np.all(z <= 4)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(mode="simpson")
    with pytest.raises(ValueError):
        QuadratureSpec(radial_nodes=0)


def test_radial_examples():
    assert np.isclose(h.radial_integral(4, 0, 0, 0), 1 / pi**2)
    assert np.isclose(h.radial_integral(4, 1, 0, 1), 1 / (2 * pi**2))
    assert np.isclose(h.radial_integral(4, 1, 0, -1), 1 / (2 * pi**2))


@pytest.mark.parametrize("lam", [4, 5, 7])
def test_radial_closed_form_vs_quadrature(lam):
    for j2 in range(7):
        for m in range(4):
            if j2 + 2 * m > 6:
                continue
            for q2 in range(-j2, j2 + 1, 2):
                assert abs(h.radial_integral(lam, j2, m, q2) - h.radial_integral_numeric(lam, j2, m, q2)) <= 1e-10


def test_radial_sum_identity():
    for lam in range(4, 9):
        for j2 in range(7):
            for m in range(4):
                lhs, rhs = h.radial_sum_identity(lam, j2, m)
                assert lhs == rhs
    # the uncorrected statement differs by (lam - 1)^2
    lhs, rhs = h.radial_sum_identity(4, 0, 0)
    assert lhs != rhs / 9 and lhs == rhs


def test_angular_orthogonality():
    for j2 in range(4):
        for q1 in range(-j2, j2 + 1, 2):
            for q2 in range(-j2, j2 + 1, 2):
                for j2p in range(4):
                    for q1p in range(-j2p, j2p + 1, 2):
                        if (j2p - q2) % 2 or abs(q2) > j2p:
                            continue
                        v = h.angular_overlap(j2, q1, j2p, q1p, q2)
                        ref = pi / (j2 + 1) if (j2, q1) == (j2p, q1p) else 0
                        assert abs(v - ref) <= 1e-8


def test_kernel_examples(rng):
    Z = interior(rng, 4)
    assert np.allclose(h.bergman_kernel(4, np.zeros((2, 2)), Z), 1)
    assert np.allclose(h.bergman_kernel(4, Z, np.zeros((2, 2))), 1)
    Zp = interior(rng, 4)
    assert np.allclose(h.bergman_series(4, Z, Zp, 40), h.bergman_kernel(4, Z, Zp), rtol=1e-8)
    d = h.bergman_kernel(5, Z, Z)
    assert np.allclose(d.imag, 0) and np.all(d.real >= 1)
    assert np.allclose(d, np.real(det2(np.eye(2) - dagger(Z) @ Z)) ** -5)
    assert np.allclose(h.bergman_kernel(2, Z, Zp), det2(np.eye(2) - dagger(Z) @ Zp) ** -2)


def test_kernel_hermitian(rng):
    Z, Zp = interior(rng, 6), interior(rng, 6)
    assert np.allclose(h.bergman_kernel(4, Z, Zp), np.conj(h.bergman_kernel(4, Zp, Z)))


def test_reproducing_property(rng):
    lam = 4
    Z0 = interior(rng, 1)[0]
    K = h.kernel_evaluable(lam, Z0)
    for idx in h.basis_indices(2):
        got = h.inner_product(lam, K, h.basis_evaluable(lam, idx), QuadratureSpec(angular_nodes=32))
        assert abs(got - h.basis_fn(lam, idx, Z0)) <= 1e-5


def test_rep_identity_and_law(rng):
    lam = 4
    phi = CoeffVector.random(lam, 2, rng)
    Z = interior(rng, 10)
    assert np.allclose(h.rep_apply(lam, upsilon(exp_element(random_lie_params(rng, 0))), phi)(Z), phi(Z))
    for _ in range(5):
        g, gp = random_element(rng), random_element(rng)
        lhs = h.rep_apply(lam, g, h.rep_apply(lam, gp, phi))(Z)
        assert np.allclose(lhs, h.rep_apply(lam, g @ gp, phi)(Z), rtol=1e-9)


def test_unitarity(rng):
    lam = 5
    idx = h.basis_indices(2)
    fs = [h.basis_evaluable(lam, i) for i in idx]
    for _ in range(3):
        G = h.rep_gram_pullback(lam, random_element(rng), fs, degree=(2, 2))
        assert np.max(np.abs(G - np.eye(len(idx)))) <= 1e-6


def test_tube_basics(rng):
    W = 1j * np.eye(2)
    assert np.isclose(h.tube_kernel(4, W, W), 1)
    one = h.basis_evaluable(4, ONE)
    w = 0.3 + 0.9j
    assert np.isclose(h.to_tube(4, one)(w * np.eye(2)), 2.0**8 * (1 - 1j * w) ** -8)


def test_tube_kernel_pullback(rng):
    lam = 4
    from cwlab.group import cayley

    W, Wp = cayley_inv(interior(rng, 5)), cayley_inv(interior(rng, 5))
    pre = lambda V: 2.0 ** (2 * lam) * det2(np.eye(2) - 1j * V) ** (-lam)  # noqa: E731
    rhs = np.conj(pre(W)) * pre(Wp) * h.bergman_kernel(lam, cayley(W), cayley(Wp))
    assert np.allclose(h.tube_kernel(lam, W, Wp), rhs, rtol=1e-10)


def test_tube_isometry():
    lam = 4
    idx = h.basis_indices(1)
    fs = [h.basis_evaluable(lam, i) for i in idx]
    T = h.tube_gram(lam, [h.to_tube(lam, f) for f in fs], [h.to_tube(lam, f) for f in fs], degree=(1, 1))
    assert np.max(np.abs(T - np.eye(len(idx)))) <= 1e-6


def test_equivariance(rng):
    lam = 4
    phi = CoeffVector.random(lam, 2, rng)
    for _ in range(5):
        f = exp_element(random_lie_params(rng))
        g = upsilon(f)
        W = cayley_inv(interior(rng, 6))
        lhs = h.to_tube(lam, h.rep_apply(lam, g, phi))(W)
        rhs = h.tube_rep_apply(lam, f, h.to_tube(lam, phi))(W)
        assert np.allclose(lhs, rhs, rtol=1e-9)


def test_coeff_vector(rng):
    v = CoeffVector(4, {(1, 0, 1, -1): 2.0})
    assert v.degree == 1
    Z = interior(rng, 3)
    assert np.allclose(v(Z), 2 * h.basis_fn(4, BasisIndex(1, 0, 1, -1), Z))
    with pytest.raises(ValueError):
        CoeffVector(3, {})


def test_lebesgue_volume():
    est, err = h.lebesgue_mc(lambda Z: np.ones(len(Z)), 400_000, 1)
    vol = pi**4 / 12
    assert abs(est - vol) <= 4 * err


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sample_cartan_inside(seed):
    from cwlab.matrices import in_cartan

    assert in_cartan(h.sample_cartan(np.random.default_rng(seed), 64)).all()
