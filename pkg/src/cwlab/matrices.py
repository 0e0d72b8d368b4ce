"""Small dense complex matrices and domain membership tests.

Every routine here accepts a single ``(N, N)`` array or a batch shaped
``(..., N, N)``; batch axes are carried through unchanged.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

#: Points closer than this to a domain boundary are treated as outside.
BOUNDARY_TOL = 1e-14


def as_matrix(X, n: int | None = None) -> np.ndarray:
    """Return ``X`` as a complex square matrix (or batch), checking it is finite."""
    X = np.asarray(X, dtype=complex)
    if X.ndim < 2 or X.shape[-1] != X.shape[-2] or X.shape[-1] < 1:
        raise ValueError(f"expected square matrices, got shape {X.shape}")
    if n is not None and X.shape[-1] != n:
        raise ValueError(f"expected {n}x{n} matrices, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("matrix entries must be finite")
    return X


def dagger(X):
    return np.conj(np.swapaxes(X, -1, -2))


def det2(X):
    return X[..., 0, 0] * X[..., 1, 1] - X[..., 0, 1] * X[..., 1, 0]


def inv2(X):
    """Closed-form inverse of 2x2 matrices (batched)."""
    d = det2(X)
    out = np.empty_like(X)
    out[..., 0, 0] = X[..., 1, 1]
    out[..., 1, 1] = X[..., 0, 0]
    out[..., 0, 1] = -X[..., 0, 1]
    out[..., 1, 0] = -X[..., 1, 0]
    return out / d[..., None, None]


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            k = p[i]
            p[i], p[k] = p[k], p[i]
            sign = -sign
    return sign


def det(X):
    """Determinant: explicit permutation expansion for N <= 4, LU beyond."""
    X = np.asarray(X, dtype=complex)
    n = X.shape[-1]
    if n == 1:
        return X[..., 0, 0]
    if n == 2:
        return det2(X)
    if n <= 4:
        total = np.zeros(X.shape[:-2], dtype=complex)
        for p in permutations(range(n)):
            term = np.full(X.shape[:-2], _perm_sign(p), dtype=complex)
            for i, k in enumerate(p):
                term = term * X[..., i, k]
            total = total + term
        return total
    return np.linalg.det(X)


def principal_minor_sums(X) -> np.ndarray:
    """Sums ``T_0(X), ..., T_N(X)`` of all principal minors of each order.

    ``T_q`` is the sum of the determinants of the ``q x q`` principal
    submatrices, so ``T_0 = 1``, ``T_1 = tr X`` and ``T_N = det X``. The
    result has the batch shape of ``X`` with a trailing axis of length N+1.
    """
    X = as_matrix(X)
    n = X.shape[-1]
    out = np.zeros(X.shape[:-2] + (n + 1,), dtype=complex)
    out[..., 0] = 1.0
    for q in range(1, n + 1):
        acc = np.zeros(X.shape[:-2], dtype=complex)
        for idx in combinations(range(n), q):
            sub = X[..., idx, :][..., :, idx]
            acc = acc + det(sub)
        out[..., q] = acc
    return out


def eigen_bounds(Z):
    """Eigenvalues ``(rho_plus, rho_minus)`` of ``I - Z Z^dagger`` for 2x2 ``Z``.

    Uses the closed form of the characteristic polynomial; both values are
    real and ``rho_plus >= rho_minus``.
    """
    Z = as_matrix(Z, 2)
    ZZ = Z @ dagger(Z)
    t = np.real(ZZ[..., 0, 0] + ZZ[..., 1, 1])
    d = np.real(det2(ZZ))
    disc = np.maximum(t * t - 4.0 * d, 0.0)
    root = np.sqrt(disc)
    return (2.0 - t + root) / 2.0, (2.0 - t - root) / 2.0


def hermitian_eig2(H):
    """Closed-form eigenvalues (descending) of hermitian 2x2 matrices."""
    a = np.real(H[..., 0, 0])
    c = np.real(H[..., 1, 1])
    b = np.abs(H[..., 0, 1])
    mean = (a + c) / 2.0
    rad = np.sqrt(((a - c) / 2.0) ** 2 + b * b)
    return mean + rad, mean - rad


def hermitian_sqrt2(H):
    """Positive square root of positive-definite hermitian 2x2 matrices.

    Uses ``sqrt(H) = (H + s I) / sqrt(tr H + 2 s)`` with ``s = sqrt(det H)``,
    which follows from Cayley-Hamilton for 2x2 matrices.
    """
    H = np.asarray(H, dtype=complex)
    s = np.sqrt(np.real(det2(H)))
    tr = np.real(H[..., 0, 0] + H[..., 1, 1])
    eye = np.eye(2)
    return (H + s[..., None, None] * eye) / np.sqrt(tr + 2.0 * s)[..., None, None]


def in_cartan(Z) -> np.ndarray:
    """Vectorized test ``I - Z Z^dagger > 0`` (strict, boundary rejected)."""
    _, rho_minus = eigen_bounds(Z)
    return rho_minus > BOUNDARY_TOL


def cartan_bounds(Z) -> dict:
    """Necessary bounds for ``Z`` in the Cartan domain, as boolean arrays.

    ``trace``: ``tr(Z Z^dag) < 2``; ``det``: ``det(Z Z^dag) < 1``;
    ``rows``: both rows of ``Z`` have squared norm below 1.
    """
    Z = as_matrix(Z, 2)
    ZZ = Z @ dagger(Z)
    rows = np.real(ZZ[..., 0, 0]), np.real(ZZ[..., 1, 1])
    return {
        "trace": rows[0] + rows[1] < 2,
        "det": np.real(det2(ZZ)) < 1,
        "rows": (rows[0] < 1) & (rows[1] < 1),
    }


def imag_part(W):
    """Hermitian imaginary part ``Y = (W - W^dagger) / 2i`` of a 2x2 matrix."""
    return (W - dagger(W)) / 2j


def in_tube(W) -> np.ndarray:
    W = as_matrix(W, 2)
    _, low = hermitian_eig2(imag_part(W))
    return low > BOUNDARY_TOL


class DomainKind(enum.Enum):
    CARTAN_D4 = "cartan"
    TUBE4 = "tube"
    DISK1 = "disk"
    HALF_PLANE1 = "halfplane"


@dataclass(frozen=True)
class DomainPoint:
    kind: DomainKind
    value: object


def is_in_domain(p: DomainPoint) -> bool:
    """Membership of a point in its domain; boundary points are rejected."""
    if p.kind in (DomainKind.DISK1, DomainKind.HALF_PLANE1):
        v = np.asarray(p.value)
        if v.ndim != 0:
            raise ValueError(f"{p.kind.value} points are complex scalars")
        v = complex(v)
        if p.kind is DomainKind.DISK1:
            return bool(1.0 - abs(v) > BOUNDARY_TOL)
        return bool(v.imag > BOUNDARY_TOL)
    v = np.asarray(p.value, dtype=complex)
    if v.shape != (2, 2):
        raise ValueError(f"{p.kind.value} points are 2x2 matrices, got shape {v.shape}")
    if p.kind is DomainKind.CARTAN_D4:
        return bool(in_cartan(v))
    return bool(in_tube(v))


def random_complex(rng, shape, scale=1.0):
    """Complex standard normal samples times ``scale``."""
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
