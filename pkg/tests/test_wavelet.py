from math import pi

import numpy as np
import pytest

from cwlab import hilbert4d as h
from cwlab import wavelet as wv
from cwlab.group import (
    LieParams,
    exp_element,
    identity_diag,
    identity_offdiag,
    random_element,
    random_lie_params,
    upsilon,
)
from cwlab.hilbert4d import BasisIndex, CoeffVector, QuadratureSpec
from cwlab.matrices import dagger, det2, inv2

ONE = BasisIndex(0, 0, 0, 0)


def interior(rng, n):
    return 0.6 * h.sample_cartan(rng, n)


def test_admissibility_constant():
    assert np.isclose(wv.admissibility_constant(4), 4 / 3 * pi**10, rtol=1e-14)
    assert np.isclose(wv.U2_VOLUME, 4 * pi**3)
    for lam in range(4, 9):
        c = wv.admissibility_constant(lam)
        assert np.isfinite(c) and c > 0
    with pytest.raises(ValueError):
        wv.admissibility_constant(3)


def test_admissibility_mc():
    est, err = wv.admissibility_mc(4, 1_000_000, 11)
    assert abs(est - 1 / h.c_lambda(4)) <= 3 * err


def test_coherent_coeff_identity():
    g = identity_diag()
    for idx in h.basis_indices(2):
        v = wv.coherent_coeff(4, g, idx)
        assert np.isclose(v, 1.0 if idx == ONE else 0.0)


def test_coherent_coeff_ground_state(rng):
    lam = 5
    for _ in range(5):
        g = random_element(rng)
        Zt = g.B @ inv2(g.D)
        lhs = abs(wv.coherent_coeff(lam, g, ONE)) ** 2
        assert np.isclose(lhs, np.real(det2(np.eye(2) - Zt @ dagger(Zt))) ** lam)
        assert np.isclose(lhs, np.real(det2(g.D @ dagger(g.D))) ** -lam)


def test_coherent_state_expansion(rng):
    lam = 4
    idxs = h.basis_indices(30)
    for _ in range(2):
        g = random_element(rng, 0.3)
        Z = interior(rng, 10)
        psi = wv.coherent_state(lam, g)(Z)
        partial = sum(wv.coherent_coeff(lam, g, i) * h.basis_fn(lam, i, Z) for i in idxs)
        assert np.max(np.abs(partial - psi) / np.abs(psi)) <= 1e-7


def test_coherent_state_is_rep_of_unit(rng):
    g = random_element(rng)
    Z = interior(rng, 5)
    one = h.basis_evaluable(4, ONE)
    assert np.allclose(wv.coherent_state(4, g)(Z), h.rep_apply(4, g, one)(Z))


def test_singular_d_rejected():
    with pytest.raises(ValueError):
        wv.coherent_coeff(4, (np.eye(2), np.zeros((2, 2))), ONE)


def test_frame_tight_quadrature():
    lam = 4
    idx = h.basis_indices(2)
    F = wv.frame_matrix(lam, idx)
    assert np.max(np.abs(F / wv.admissibility_constant(lam) - np.eye(len(idx)))) <= 1e-10
    assert np.isclose(wv.frame_element(lam, ONE, ONE), wv.admissibility_constant(lam))


def test_frame_mc():
    lam = 5
    c = wv.admissibility_constant(lam)
    spec = QuadratureSpec(mode="mc", mc_samples=300_000, seed=5)
    idx = [ONE, BasisIndex(1, 0, 1, 1), BasisIndex(1, 0, -1, 1), BasisIndex(2, 0, 0, 0)]
    est, err = wv.frame_matrix(lam, idx, spec=spec)
    ref = c * np.eye(len(idx))
    assert np.all(np.abs(est - ref) <= 4 * np.maximum(err, 1e-300) + 1e-12 * c)
    v, e = wv.frame_element(lam, idx[1], idx[2], spec)
    assert abs(v) <= 4 * e


def test_analyze_examples(rng):
    lam = 4
    c = wv.admissibility_constant(lam)
    Phi = wv.analyze(lam, CoeffVector.unit(lam))
    assert np.isclose(Phi(identity_diag()), 1 / c)
    idx = BasisIndex(2, 1, 0, 2)
    g = random_element(rng)
    v = wv.analyze(lam, CoeffVector(lam, {idx: 1.0}))(g)
    assert np.isclose(v, det2(g.D) ** -lam * h.basis_fn(lam, idx, g.B @ inv2(g.D)) / c)
    with pytest.raises(ValueError):
        wv.analyze(5, CoeffVector.unit(4))


def test_analyze_vs_direct_quadrature(rng):
    lam = 4
    phi = CoeffVector.random(lam, 2, rng)
    Phi = wv.analyze(lam, phi)
    for _ in range(5):
        g = random_element(rng)
        direct = h.inner_product(lam, h.Evaluable(wv.coherent_state(lam, g)), h.Evaluable(phi, phi.degree))
        assert abs(direct / wv.admissibility_constant(lam) - Phi(g)) <= 1e-5 * max(abs(Phi(g)), 1e-300)


def test_analyze_function_matches(rng):
    lam = 4
    phi = CoeffVector.random(lam, 3, rng)
    g = random_element(rng)
    assert np.isclose(wv.analyze(lam, phi)(g), wv.analyze_function(lam, phi, g), rtol=1e-12)


def test_synthesis_roundtrip(rng):
    lam = 4
    Z = interior(rng, 10)
    assert np.allclose(wv.synthesize(lam, wv.analyze(lam, CoeffVector.unit(lam)), Z), 1, atol=1e-6)
    phi = CoeffVector.random(lam, 4, rng)
    out = wv.synthesize(lam, wv.analyze(lam, phi), Z)
    assert np.max(np.abs(out - phi(Z)) / np.abs(phi(Z))) <= 1e-12
    rec = wv.reconstruct_coeffs(wv.analyze(lam, phi))
    for k, v in phi.coeffs.items():
        assert abs(rec.coeffs[k] - v) <= 1e-12


def test_synthesis_mc_path(rng):
    lam = 4
    phi = CoeffVector.random(lam, 2, rng)
    Z = interior(rng, 4)
    Phi = wv.analyze(lam, phi)
    est, err = wv.synthesize(lam, Phi, Z, QuadratureSpec(mode="mc", mc_samples=300_000, seed=2))
    exact = wv.synthesize(lam, Phi, Z)
    assert np.all(np.abs((est - exact).real) <= 3.5 * err)
    assert np.all(np.abs((est - exact).imag) <= 3.5 * err)


def test_covariance(rng):
    lam = 4
    phi = CoeffVector.random(lam, 2, rng)
    Phi = wv.analyze(lam, phi)
    for _ in range(10):
        g0, g = random_element(rng), random_element(rng)
        lhs = wv.analyze_function(lam, h.rep_apply(lam, g0, phi), g)
        rhs = Phi(g0.inverse() @ g)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)


def test_isotropy_examples():
    assert wv.isotropy_check(identity_offdiag())
    f = wv.null_isotropy_element([1, 0, 0, 1])
    rep = wv.isotropy_report(f)
    assert rep["isotropic"] and rep["family"] == "null"
    assert rep["unitarity_residual"] <= 1e-12 and rep["hermiticity_residual"] <= 1e-12
    assert not wv.isotropy_check(exp_element(LieParams(b=(1, 0, 0, 0))))
    with pytest.raises(ValueError):
        wv.null_isotropy_element([1, 0, 0, 0])


def test_isotropy_unitary_family(rng):
    f = exp_element(LieParams(omega=(0, 0, 0, 0.3, -0.2, 0.5)))
    assert wv.isotropy_report(f)["family"] == "unitary"
    assert not wv.isotropy_check(exp_element(LieParams(omega=(0.4, 0, 0, 0, 0, 0))))


def test_isotropy_preserves_modulus(rng):
    lam = 4
    one = h.basis_evaluable(lam, ONE)
    Z = interior(rng, 20)
    for f in (wv.null_isotropy_element([1, 0, 0, 1]), wv.null_isotropy_element([1, 0.6, 0, 0.8], 0.2),
              exp_element(LieParams(omega=(0, 0, 0, 0.3, -0.2, 0.5)))):
        assert wv.isotropy_check(f)
        assert np.allclose(np.abs(h.rep_apply(lam, upsilon(f), one)(Z)), 1, atol=1e-10)


def test_isotropy_iff_block_diagonal(rng):
    for _ in range(20):
        f = exp_element(random_lie_params(rng))
        g = upsilon(f)
        iso = np.max(np.abs(g.B)) <= 1e-10
        assert wv.isotropy_check(f) == iso
        assert wv.isotropy_check(f) == (np.allclose(f.S, -f.T) and np.allclose(f.Q, f.R))


def test_mother_slice():
    t = wv.mother_slice(1, -2, 2, 1e-9, 1e-9, 9, 1)
    assert np.allclose(t[:, 2], 4 / (1 + t[:, 0] ** 2), rtol=1e-7)
    t = wv.mother_slice(1, 0, 0, 1, 1, 1, 1)
    assert np.allclose(t[0, 2:], [1, 0])
    t = wv.mother_slice(3, 0, 0, 0.1, 5, 1, 7)
    assert np.all(t[:, 3] == 0)
    t = wv.mother_slice(2, -1, 1, 0.5, 1, 3, 2)
    assert np.allclose(t[:3, 1], 0.5) and np.allclose(t[:3, 0], [-1, 0, 1])
    assert np.all((t[:, 3] > -pi) & (t[:, 3] <= pi))
    with pytest.raises(ValueError):
        wv.mother_slice(1, 0, 1, 0, 1, 2, 2)


def test_mother_is_tube_image_of_unit():
    lam = 4
    one = h.basis_evaluable(lam, ONE)
    w = np.array([0.5 + 0.3j, -2 + 1j])
    W = w[:, None, None] * np.eye(2)
    assert np.allclose(h.to_tube(lam, one)(W), wv.mother_tube(lam, w))
