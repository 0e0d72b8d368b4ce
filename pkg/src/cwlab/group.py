"""SU(2,2) in two block realizations, its actions and the Cayley maps.

Two 4x4 realizations are used.

``GroupElementOffdiag``
    ``f = [[R, iS], [-iT, Q]]`` preserving ``gamma0 = [[0, I], [I, 0]]``;
    acts on the future tube by ``W -> (RW + S)(TW + Q)^-1``.
``GroupElementDiag``
    ``g = [[A, B], [C, D]]`` preserving ``diag(I, -I)``; acts on the
    Cartan domain through ``g^-1``, ``Z -> (A^dag Z - C^dag)(D^dag - B^dag Z)^-1``.

The two are conjugate, ``g = Ups^-1 f Ups`` with
``Ups = [[I, -I], [I, I]] / sqrt(2)``.

Composition convention: group elements compose by 4x4 matrix product.
``act_tube`` is a left action, ``act_tube(f f', W) = act_tube(f, act_tube(f', W))``,
while ``act_cartan`` uses ``g^-1`` and so satisfies
``act_cartan(g g', Z) = act_cartan(g', act_cartan(g, Z))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .matrices import (
    as_matrix,
    dagger,
    det2,
    hermitian_sqrt2,
    in_cartan,
    in_tube,
    inv2,
)

CONSTRAINT_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)

#: sigma^mu, mu = 0..3
SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
#: sigma with lowered index: (I, -sigma^1, -sigma^2, -sigma^3)
SIGMA_CHECK = SIGMA * np.array([1, -1, -1, -1])[:, None, None]

GAMMA0 = np.block([[Z2, I2], [I2, Z2]])
GAMMA_DIAG = np.block([[I2, Z2], [Z2, -I2]])
UPSILON = np.block([[I2, -I2], [I2, I2]]) / np.sqrt(2.0)

LORENTZ_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def blocks(M):
    return M[:2, :2], M[:2, 2:], M[2:, :2], M[2:, 2:]


def minkowski_matrix(x):
    """``x_mu sigma^mu`` for a real or complex 4-vector."""
    return np.tensordot(np.asarray(x, dtype=complex), SIGMA, axes=(0, 0))


def minkowski_coords(X):
    """Inverse of :func:`minkowski_matrix`: ``x_mu = tr(sigma^mu X) / 2``."""
    return np.einsum("mab,...ba->...m", SIGMA, X) / 2.0


# group elements

@dataclass(frozen=True)
class GroupElementDiag:
    """``g = [[A, B], [C, D]]`` with ``g^dag diag(I,-I) g = diag(I,-I)``."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        for name in "ABCD":
            object.__setattr__(self, name, as_matrix(getattr(self, name), 2))
        if self.validate:
            r = self.constraint_residual()
            if r > CONSTRAINT_TOL:
                raise ValueError(f"not a U(2,2) element: constraint residual {r:.3g}")

    @classmethod
    def from_matrix(cls, M, validate=True):
        return cls(*blocks(np.asarray(M, dtype=complex)), validate=validate)

    @property
    def matrix(self):
        return np.block([[self.A, self.B], [self.C, self.D]])

    def constraint_residual(self) -> float:
        A, B, C, D = self.A, self.B, self.C, self.D
        eqs = [
            dagger(D) @ D - dagger(B) @ B - I2,
            dagger(A) @ A - dagger(C) @ C - I2,
            dagger(A) @ B - dagger(C) @ D,
            D @ dagger(D) - C @ dagger(C) - I2,
            A @ dagger(A) - B @ dagger(B) - I2,
            A @ dagger(C) - B @ dagger(D),
        ]
        return float(max(np.max(np.abs(e)) for e in eqs))

    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def inverse(self):
        return GroupElementDiag(dagger(self.A), -dagger(self.C), -dagger(self.B), dagger(self.D))

    def __matmul__(self, other):
        return GroupElementDiag.from_matrix(self.matrix @ other.matrix)


@dataclass(frozen=True)
class GroupElementOffdiag:
    """``f = [[R, iS], [-iT, Q]]`` with ``f^dag gamma0 f = gamma0``."""

    R: np.ndarray
    S: np.ndarray
    T: np.ndarray
    Q: np.ndarray
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        for name in "RSTQ":
            object.__setattr__(self, name, as_matrix(getattr(self, name), 2))
        if self.validate:
            r = self.constraint_residual()
            if r > CONSTRAINT_TOL:
                raise ValueError(f"not a U(2,2) element: constraint residual {r:.3g}")

    @classmethod
    def from_matrix(cls, M, validate=True):
        R, iS, miT, Q = blocks(np.asarray(M, dtype=complex))
        return cls(R, iS / 1j, miT / -1j, Q, validate=validate)

    @property
    def matrix(self):
        return np.block([[self.R, 1j * self.S], [-1j * self.T, self.Q]])

    @property
    def mobius(self):
        """``[[R, S], [T, Q]]``, the matrix whose Mobius action is :func:`act_tube`."""
        return np.block([[self.R, self.S], [self.T, self.Q]])

    def constraint_residual(self) -> float:
        f = self.matrix
        return float(np.max(np.abs(dagger(f) @ GAMMA0 @ f - GAMMA0)))

    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))

    def inverse(self):
        return GroupElementOffdiag(dagger(self.Q), -dagger(self.S), -dagger(self.T), dagger(self.R))

    def __matmul__(self, other):
        return GroupElementOffdiag.from_matrix(self.matrix @ other.matrix)


def identity_diag():
    return GroupElementDiag(I2, Z2, Z2, I2)


def identity_offdiag():
    return GroupElementOffdiag(I2, Z2, Z2, I2)


# Lie algebra and exponential map

@dataclass(frozen=True)
class LieParams:
    """Coordinates of a conformal Lie algebra element.

    ``tau`` dilation, ``b`` translation (4), ``c`` special conformal (4),
    ``omega`` Lorentz (6, ordered as ``LORENTZ_PAIRS``).
    """

    tau: float = 0.0
    b: tuple = (0.0, 0.0, 0.0, 0.0)
    c: tuple = (0.0, 0.0, 0.0, 0.0)
    omega: tuple = (0.0,) * 6

    def __post_init__(self):
        object.__setattr__(self, "tau", float(self.tau))
        for name, n in (("b", 4), ("c", 4), ("omega", 6)):
            v = tuple(float(x) for x in getattr(self, name))
            if len(v) != n:
                raise ValueError(f"{name} needs {n} components")
            object.__setattr__(self, name, v)
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("Lie parameters must be finite")

    def as_array(self):
        return np.array((self.tau,) + self.b + self.c + self.omega)

    @classmethod
    def from_array(cls, v):
        v = [float(x) for x in v]
        if len(v) != 15:
            raise ValueError("expected 15 Lie parameters")
        return cls(v[0], v[1:5], v[5:9], v[9:15])

    def to_dict(self):
        return {"tau": self.tau, "b": list(self.b), "c": list(self.c), "omega": list(self.omega)}


def _lorentz_block(mu, nu):
    a = (SIGMA[mu] @ SIGMA_CHECK[nu] - SIGMA[nu] @ SIGMA_CHECK[mu]) / 4
    b = (SIGMA_CHECK[mu] @ SIGMA[nu] - SIGMA_CHECK[nu] @ SIGMA[mu]) / 4
    return np.block([[a, Z2], [Z2, b]])


def generator(u: LieParams):
    """The 4x4 algebra element (gamma0 realization) for the parameters ``u``.

    Dilation ``diag(I, -I)/2``; translation ``[[0, i sigma^mu], [0, 0]]``;
    special conformal ``[[0, 0], [-i sigma_check^mu, 0]]``; Lorentz
    ``([gamma^mu, gamma^nu]/4)`` in block form. The factors of ``i`` put the
    physics generators into the real form preserving ``gamma0``.
    """
    X = u.tau * np.block([[I2 / 2, Z2], [Z2, -I2 / 2]])
    S = np.tensordot(u.b, SIGMA, axes=(0, 0))
    T = np.tensordot(u.c, SIGMA_CHECK, axes=(0, 0))
    X = X + np.block([[Z2, 1j * S], [-1j * T, Z2]])
    for w, (mu, nu) in zip(u.omega, LORENTZ_PAIRS):
        X = X + w * _lorentz_block(mu, nu)
    return X


def exp_element(u: LieParams) -> GroupElementOffdiag:
    """Group element ``exp(generator(u))`` in the gamma0 realization."""
    f = expm(generator(u))
    el = GroupElementOffdiag.from_matrix(f, validate=False)
    r = el.constraint_residual()
    if r > CONSTRAINT_TOL or abs(el.det() - 1) > CONSTRAINT_TOL:
        raise ValueError(f"exponential left SU(2,2): residual {r:.3g}")
    return el


def random_lie_params(rng, scale=0.5) -> LieParams:
    """Parameters drawn uniformly in ``[-scale, scale]``."""
    return LieParams.from_array(rng.uniform(-scale, scale, 15))


def random_element(rng, scale=0.5) -> GroupElementDiag:
    """A random diag-realization element ``upsilon(exp_element(u))``."""
    return upsilon(exp_element(random_lie_params(rng, scale)))


# Upsilon

def upsilon(f: GroupElementOffdiag) -> GroupElementDiag:
    """``g = Ups^-1 f Ups`` via the explicit half-block formula."""
    R, S, T, Q = f.R, f.S, f.T, f.Q
    A = (R + 1j * S - 1j * T + Q) / 2
    B = (-R + 1j * S + 1j * T + Q) / 2
    C = (-R - 1j * S - 1j * T + Q) / 2
    D = (R - 1j * S + 1j * T + Q) / 2
    return GroupElementDiag(A, B, C, D)


def upsilon_inv(g: GroupElementDiag) -> GroupElementOffdiag:
    return GroupElementOffdiag.from_matrix(UPSILON @ g.matrix @ UPSILON.conj().T)


# coset geometry

def coset_point(g: GroupElementDiag):
    """``Z = B D^-1``, the point ``g . 0`` of the Cartan domain."""
    if abs(det2(g.D)) < 1e-300:
        raise ValueError("singular D block")
    return g.B @ inv2(g.D)


def iwasawa(g: GroupElementDiag):
    """Split ``g`` into its coset point and two unitaries.

    Returns ``(Z, U1, U2)`` with ``A = Delta1 U1``, ``B = Z Delta2 U2``,
    ``C = Z^dag Delta1 U1`` and ``D = Delta2 U2`` where
    ``Delta1 = (A A^dag)^(1/2)`` and ``Delta2 = (D D^dag)^(1/2)``.
    """
    Z = coset_point(g)
    d1 = hermitian_sqrt2(g.A @ dagger(g.A))
    d2 = hermitian_sqrt2(g.D @ dagger(g.D))
    return Z, inv2(d1) @ g.A, inv2(d2) @ g.D


def section(Z, U1=I2, U2=I2) -> GroupElementDiag:
    """Group element with coset point ``Z`` and compact parts ``U1, U2``."""
    Z = as_matrix(Z, 2)
    d1 = hermitian_sqrt2(np.linalg.inv(I2 - Z @ dagger(Z)))
    d2 = hermitian_sqrt2(np.linalg.inv(I2 - dagger(Z) @ Z))
    return GroupElementDiag(d1 @ U1, Z @ d2 @ U2, dagger(Z) @ d1 @ U1, d2 @ U2)


def _check_cartan(Z):
    if not np.all(in_cartan(Z)):
        raise ValueError("point outside the Cartan domain")


def act_cartan(g: GroupElementDiag, Z, check=True):
    """``g^-1 . Z = (A^dag Z - C^dag)(D^dag - B^dag Z)^-1`` (batched in ``Z``)."""
    Z = as_matrix(Z, 2)
    if check:
        _check_cartan(Z)
    num = dagger(g.A) @ Z - dagger(g.C)
    den = dagger(g.D) - dagger(g.B) @ Z
    return num @ inv2(den)


def multiplier(g: GroupElementDiag, Z, lam: int, check=True):
    """``det(D^dag - B^dag Z)^(-lam)``; integer ``lam`` makes it branch-free."""
    Z = as_matrix(Z, 2)
    if check:
        _check_cartan(Z)
    return det2(dagger(g.D) - dagger(g.B) @ Z) ** (-int(lam))


def act_tube(f: GroupElementOffdiag, W, check=True):
    """``(RW + S)(TW + Q)^-1`` (batched in ``W``)."""
    W = as_matrix(W, 2)
    if check and not np.all(in_tube(W)):
        raise ValueError("point outside the future tube")
    return (f.R @ W + f.S) @ inv2(f.T @ W + f.Q)


def tube_multiplier(f: GroupElementOffdiag, W, lam: int):
    """``det(R^dag - T^dag W)^(-lam)``, the tube counterpart of :func:`multiplier`."""
    W = as_matrix(W, 2)
    return det2(dagger(f.R) - dagger(f.T) @ W) ** (-int(lam))


def cayley(W):
    """``Z = (I - iW)^-1 (I + iW)``, future tube to Cartan domain."""
    W = as_matrix(W, 2)
    den = I2 - 1j * W
    if np.any(np.abs(det2(den)) < 1e-300):
        raise ValueError("I - iW is singular")
    return inv2(den) @ (I2 + 1j * W)


def cayley_inv(Z):
    """``W = i (I - Z)(I + Z)^-1``, Cartan domain to future tube."""
    Z = as_matrix(Z, 2)
    den = I2 + Z
    if np.any(np.abs(det2(den)) < 1e-300):
        raise ValueError("I + Z is singular")
    return 1j * (I2 - Z) @ inv2(den)


def haar_density_coset(Z, check=True):
    """``det(I - Z Z^dag)^-4``."""
    Z = as_matrix(Z, 2)
    if check:
        _check_cartan(Z)
    return np.real(det2(I2 - Z @ dagger(Z))) ** -4


def hopf(z, beta1, beta2):
    """Unitary ``[[d, -z d], [conj(z) d, d]] diag(e^{i b1}, e^{i b2})``, ``d = (1+|z|^2)^(-1/2)``.

    ``z = inf`` gives the antidiagonal limit ``[[0, -1], [1, 0]]`` times the phases.
    """
    if np.isinf(z):
        U = np.array([[0, -1], [1, 0]], dtype=complex)
    else:
        d = 1.0 / np.sqrt(1.0 + abs(z) ** 2)
        U = np.array([[d, -z * d], [np.conj(z) * d, d]], dtype=complex)
    return U @ np.diag([np.exp(1j * beta1), np.exp(1j * beta2)])


def hopf_params(U):
    """Recover ``(z, beta1, beta2)`` from a unitary with nonzero diagonal."""
    U = as_matrix(U, 2)
    if abs(U[0, 0]) < 1e-300 or abs(U[1, 1]) < 1e-300:
        return np.inf, float(np.angle(U[1, 0])), float(np.angle(-U[0, 1]))
    return complex(-U[0, 1] / U[1, 1]), float(np.angle(U[0, 0])), float(np.angle(U[1, 1]))
