import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwlab import group
from cwlab.group import (
    GAMMA_DIAG,
    GroupElementDiag,
    GroupElementOffdiag,
    LieParams,
    act_cartan,
    act_tube,
    cayley,
    cayley_inv,
    coset_point,
    exp_element,
    haar_density_coset,
    hopf,
    hopf_params,
    identity_diag,
    identity_offdiag,
    iwasawa,
    minkowski_matrix,
    multiplier,
    random_element,
    random_lie_params,
    section,
    upsilon,
    upsilon_inv,
)
from cwlab.hilbert4d import sample_cartan
from cwlab.matrices import dagger, det2, in_cartan, in_tube, random_complex

lie = st.lists(st.floats(-0.5, 0.5), min_size=15, max_size=15).map(LieParams.from_array)


def tube_points(rng, n):
    return cayley_inv(0.6 * sample_cartan(rng, n))


def test_exp_identity():
    f = exp_element(LieParams())
    assert np.allclose(f.matrix, np.eye(4))


def test_pure_translation():
    b = np.array([0.3, -0.2, 0.5, 0.1])
    f = exp_element(LieParams(b=b))
    assert np.allclose(f.R, np.eye(2)) and np.allclose(f.Q, np.eye(2))
    assert np.allclose(f.S, minkowski_matrix(b)) and np.allclose(f.T, 0)


def test_pure_dilation():
    f = exp_element(LieParams(tau=0.7))
    assert np.allclose(f.R, np.exp(0.35) * np.eye(2))
    assert np.allclose(f.Q, np.exp(-0.35) * np.eye(2))
    assert np.allclose(f.S, 0) and np.allclose(f.T, 0)


@settings(max_examples=40, deadline=None)
@given(lie)
def test_exp_constraints(u):
    f = exp_element(u)
    assert f.constraint_residual() <= 1e-10
    assert abs(f.det() - 1) <= 1e-10
    g = upsilon(f)
    assert g.constraint_residual() <= 1e-10
    assert np.allclose(upsilon_inv(g).matrix, f.matrix, atol=1e-12)
    M = g.matrix
    assert np.allclose(dagger(M) @ GAMMA_DIAG @ M, GAMMA_DIAG, atol=1e-10)


def test_upsilon_matches_conjugation(rng):
    f = exp_element(random_lie_params(rng))
    U = group.UPSILON
    assert np.allclose(upsilon(f).matrix, U.conj().T @ f.matrix @ U, atol=1e-13)
    assert np.allclose(upsilon(identity_offdiag()).matrix, np.eye(4))


def test_upsilon_translation_blocks():
    b = np.array([0.1, 0.2, -0.3, 0.4])
    S = minkowski_matrix(b)
    g = upsilon(exp_element(LieParams(b=b)))
    I = np.eye(2)
    assert np.allclose(g.A, I + 0.5j * S) and np.allclose(g.B, 0.5j * S)
    assert np.allclose(g.C, -0.5j * S) and np.allclose(g.D, I - 0.5j * S)


def test_invalid_elements_rejected():
    with pytest.raises(ValueError):
        GroupElementDiag(2 * np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), np.eye(2))
    with pytest.raises(ValueError):
        GroupElementOffdiag(np.eye(2), 1j * np.eye(2), np.zeros((2, 2)), np.eye(2))


def test_inverses(rng):
    f = exp_element(random_lie_params(rng))
    assert np.allclose((f @ f.inverse()).matrix, np.eye(4), atol=1e-13)
    g = upsilon(f)
    assert np.allclose((g @ g.inverse()).matrix, np.eye(4), atol=1e-13)


def test_coset_point(rng):
    assert np.allclose(coset_point(identity_diag()), 0)
    U1, _ = np.linalg.qr(random_complex(rng, (2, 2)))
    U2, _ = np.linalg.qr(random_complex(rng, (2, 2)))
    Zb = np.zeros((2, 2))
    assert np.allclose(coset_point(GroupElementDiag(U1, Zb, Zb, U2)), 0)
    pts = np.array([coset_point(random_element(rng)) for _ in range(10_000)])
    assert in_cartan(pts).all()


def test_iwasawa(rng):
    Z, U1, U2 = iwasawa(identity_diag())
    assert np.allclose(Z, 0) and np.allclose(U1, np.eye(2)) and np.allclose(U2, np.eye(2))
    for _ in range(20):
        g = random_element(rng)
        Z, U1, U2 = iwasawa(g)
        for U in (U1, U2):
            assert np.allclose(U @ dagger(U), np.eye(2), atol=1e-10)
        h = section(Z, U1, U2)
        assert np.allclose(h.matrix, g.matrix, atol=1e-10)
        # independent inverse square root from an eigensolver
        w, V = np.linalg.eigh(np.eye(2) - Z @ dagger(Z))
        d1 = V @ np.diag(w**-0.5) @ dagger(V)
        assert np.allclose(d1 @ U1, g.A, atol=1e-10)


def test_act_cartan_examples(rng):
    Z = 0.6 * sample_cartan(rng, 5)
    assert np.allclose(act_cartan(identity_diag(), Z), Z)
    U1, _ = np.linalg.qr(random_complex(rng, (2, 2)))
    U2, _ = np.linalg.qr(random_complex(rng, (2, 2)))
    Zb = np.zeros((2, 2))
    g = GroupElementDiag(U1, Zb, Zb, U2)
    assert np.allclose(act_cartan(g, Z), dagger(U1) @ Z @ U2)
    with pytest.raises(ValueError):
        act_cartan(g, np.eye(2))


def test_act_cartan_membership_and_composition(rng):
    pairs = [(random_element(rng), random_element(rng)) for _ in range(50)]
    for g, h in pairs:
        Z = sample_cartan(rng, 200)
        W = act_cartan(g, Z)
        assert in_cartan(W).all()
        assert np.allclose(act_cartan(g @ h, Z), act_cartan(h, act_cartan(g, Z)), atol=1e-10)


def test_multiplier_cocycle(rng):
    Z = 0.6 * sample_cartan(rng, 20)
    assert np.allclose(multiplier(identity_diag(), Z, 4), 1)
    for _ in range(10):
        g, h = random_element(rng), random_element(rng)
        lhs = multiplier(g @ h, Z, 5)
        rhs = multiplier(g, Z, 5) * multiplier(h, act_cartan(g, Z), 5)
        assert np.allclose(lhs, rhs, rtol=1e-10)


def test_multiplier_dilation():
    tau = 0.4
    g = upsilon(exp_element(LieParams(tau=tau)))
    # at Z = 0 the multiplier is det(D^dag)^-lam = (cosh(tau/2))^(-2 lam)
    assert np.isclose(multiplier(g, np.zeros((2, 2)), 3), np.cosh(tau / 2) ** -6)


def test_tube_action_families(rng):
    W = tube_points(rng, 5)
    b = np.array([0.2, 0.1, -0.3, 0.05])
    assert np.allclose(act_tube(exp_element(LieParams(b=b)), W), W + minkowski_matrix(b))
    a = np.exp(0.6)
    assert np.allclose(act_tube(exp_element(LieParams(tau=0.6)), W), a * W)
    for _ in range(20):
        f = exp_element(random_lie_params(rng))
        assert in_tube(act_tube(f, W)).all()


def test_lorentz_acts_by_congruence(rng):
    om = rng.uniform(-0.5, 0.5, 6)
    f = exp_element(LieParams(omega=om))
    W = tube_points(rng, 3)
    assert np.allclose(f.S, 0) and np.allclose(f.T, 0)
    assert np.allclose(f.Q, np.linalg.inv(dagger(f.R)), atol=1e-12)
    assert np.allclose(act_tube(f, W), f.R @ W @ dagger(f.R), atol=1e-12)


def test_special_conformal_denominator(rng):
    eta = np.diag([1.0, -1, -1, -1])
    for _ in range(5):
        c = rng.uniform(-0.3, 0.3, 4)
        x = rng.uniform(-1, 1, 4)
        f = exp_element(LieParams(c=c))
        X = minkowski_matrix(x)
        den = det2(f.T @ X + f.Q)
        assert np.isclose(den, 1 + 2 * c @ eta @ x + (c @ eta @ c) * (x @ eta @ x))
        xp = group.minkowski_coords(act_tube(f, X, check=False))
        c2, x2, cx = c @ eta @ c, x @ eta @ x, c @ eta @ x
        assert np.allclose(xp, (x + c * x2) / (1 + 2 * cx + c2 * x2))


def test_cayley(rng):
    assert np.allclose(cayley(1j * np.eye(2)), 0)
    assert np.allclose(cayley_inv(np.zeros((2, 2))), 1j * np.eye(2))
    W = tube_points(rng, 20)
    Z = cayley(W)
    assert in_cartan(Z).all()
    assert np.allclose(cayley_inv(Z), W, atol=1e-12)
    I = np.eye(2)
    other = (I + 1j * W) @ np.linalg.inv(I - 1j * W)
    assert np.allclose(Z, other, atol=1e-12)
    # hermitian W lands on the Shilov boundary
    H = minkowski_matrix(rng.uniform(-2, 2, 4))
    Zb = cayley(H)
    assert np.allclose(Zb @ dagger(Zb), I, atol=1e-10)


def test_cayley_intertwines_actions(rng):
    for _ in range(20):
        f = exp_element(random_lie_params(rng))
        W = tube_points(rng, 4)
        lhs = cayley(act_tube(f.inverse(), W))
        rhs = act_cartan(upsilon(f), cayley(W))
        assert np.allclose(lhs, rhs, atol=1e-10)


def test_haar_density(rng):
    assert haar_density_coset(np.zeros((2, 2))) == 1
    xi = 0.3 + 0.4j
    assert np.isclose(haar_density_coset(np.diag([xi, 0])), (1 - abs(xi) ** 2) ** -4)


def test_haar_density_invariance(rng):
    # density(g^-1 Z) |det d(g^-1 Z)/dZ|^2 = density(Z)
    from cwlab.hilbert4d import holomorphic_jacobian

    for _ in range(5):
        g = random_element(rng)
        Z = 0.6 * sample_cartan(rng, 30)
        J = np.abs(np.linalg.det(holomorphic_jacobian(lambda X: act_cartan(g, X, check=False), Z))) ** 2
        assert np.allclose(haar_density_coset(act_cartan(g, Z)) * J, haar_density_coset(Z), rtol=1e-8)
        assert np.allclose(J, np.abs(det2(dagger(g.D) - dagger(g.B) @ Z)) ** -8, rtol=1e-8)


def test_hopf(rng):
    assert np.allclose(hopf(0, 0, 0), np.eye(2))
    for _ in range(20):
        z = complex(*rng.normal(size=2))
        b1, b2 = rng.uniform(-np.pi, np.pi, 2)
        U = hopf(z, b1, b2)
        assert np.allclose(U @ dagger(U), np.eye(2), atol=1e-14)
        z2, c1, c2 = hopf_params(U)
        assert np.isclose(z2, z) and np.allclose(hopf(z2, c1, c2), U)
    U = hopf(np.inf, 0.3, -0.2)
    assert np.allclose(hopf(*hopf_params(U)), U)


def test_lie_params_validation():
    with pytest.raises(ValueError):
        LieParams(b=(1, 2, 3))
    with pytest.raises(ValueError):
        LieParams(tau=np.inf)
    u = LieParams.from_array(np.arange(15) / 10)
    assert np.allclose(LieParams.from_array(u.as_array()).as_array(), u.as_array())
