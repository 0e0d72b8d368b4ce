"""The weighted Bergman space of holomorphic functions on the Cartan domain.

Inner product::

    <f|g> = c_lam int conj(f(Z)) g(Z) det(I - Z Z^dag)^(lam - 4) |dZ|,
    c_lam = (lam-1)(lam-2)^2(lam-3) / pi^4,

with ``|dZ|`` the Lebesgue measure on the entries of ``Z``. Orthonormal
basis ``phi^{j,m}_{q1 q2}(Z) = N_{j,m} det(Z)^m D^j_{q1 q2}(Z)``.

Quadrature uses the coordinates ``Z = U1 Xi U2^dag`` with
``Xi = diag(rho1 e^{i theta1}, rho2 e^{i theta2})`` and ``U1, U2`` Hopf
unitaries ``[[sqrt(1-s), -sqrt(s) e^{i alpha}], [sqrt(s) e^{-i alpha}, sqrt(1-s)]]``.
In these coordinates::

    |dZ| = J |dxi1| |dxi2| ds(U1) ds(U2),   J = (rho1^2 - rho2^2)^2 / 2,
    |dxi| = du dtheta / 2 (u = rho^2),      ds(U) = ds dalpha / 2.

For polynomial integrands the rule is exact: Gauss-Legendre in ``u`` and
``s``, trapezoid in ``theta`` and ``alpha``, with node counts derived from
the degrees of the two functions (see :func:`node_counts`).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, pi, sqrt

import numpy as np

from .group import act_cartan, cayley, cayley_inv, multiplier, tube_multiplier, act_tube
from .matrices import as_matrix, dagger, det2, in_cartan, in_tube, imag_part
from .wigner import check_labels, wigner_d

I2 = np.eye(2, dtype=complex)

#: degree assumed for a function that carries no degree bound
DEFAULT_DEGREE = 8

CHUNK = 1 << 17


def _check_lam(lam, minimum=4):
    if int(lam) != lam or lam < minimum:
        raise ValueError(f"lambda must be an integer >= {minimum}, got {lam}")


def c_lambda(lam: int) -> float:
    _check_lam(lam)
    return (lam - 1) * (lam - 2) ** 2 * (lam - 3) / pi**4


# basis

@dataclass(frozen=True, order=True)
class BasisIndex:
    """Label ``(j, m, q1, q2)`` with half-integers doubled: ``(j2, m, q1_2, q2_2)``."""

    j2: int
    m: int
    q1_2: int
    q2_2: int

    def __post_init__(self):
        check_labels(self.j2, self.q1_2, self.q2_2)
        if self.m < 0:
            raise ValueError("m must be nonnegative")

    @property
    def degree(self) -> int:
        return self.j2 + 2 * self.m


def basis_indices(max_degree: int, min_degree: int = 0):
    """All labels with ``min_degree <= 2j + 2m <= max_degree``, ordered by degree."""
    out = []
    for d in range(min_degree, max_degree + 1):
        for j2 in range(d % 2, d + 1, 2):
            m = (d - j2) // 2
            for q1 in range(j2, -j2 - 1, -2):
                for q2 in range(j2, -j2 - 1, -2):
                    out.append(BasisIndex(j2, m, q1, q2))
    return out


def norm_const(lam: int, j2: int, m: int) -> float:
    """``sqrt((2j+1)/(lam-1) C(m+lam-2, lam-2) C(m+2j+lam-1, lam-2))``."""
    _check_lam(lam)
    return sqrt(norm_const_sq(lam, j2, m))


def norm_const_sq(lam: int, j2: int, m: int) -> Fraction:
    return Fraction((j2 + 1) * comb(m + lam - 2, lam - 2) * comb(m + j2 + lam - 1, lam - 2), lam - 1)


class Evaluable:
    """A vectorized function of 2x2 matrices together with an optional degree bound."""

    def __init__(self, fn, degree=None):
        self.fn = fn
        self.degree = degree

    def __call__(self, Z):
        return self.fn(Z)


def basis_fn(lam: int, idx: BasisIndex, Z):
    """``N_{j,m} det(Z)^m D^j_{q1 q2}(Z)``."""
    Z = as_matrix(Z, 2)
    return norm_const(lam, idx.j2, idx.m) * det2(Z) ** idx.m * wigner_d(idx.j2, idx.q1_2, idx.q2_2, Z)


def basis_evaluable(lam: int, idx: BasisIndex) -> Evaluable:
    return Evaluable(lambda Z: basis_fn(lam, idx, Z), idx.degree)


class CoeffVector:
    """Finite expansion ``sum_idx c_idx phi_idx`` in the orthonormal basis."""

    def __init__(self, lam: int, coeffs: dict):
        _check_lam(lam)
        self.lam = int(lam)
        self.coeffs = {BasisIndex(*k) if not isinstance(k, BasisIndex) else k: complex(v) for k, v in coeffs.items()}

    @property
    def degree(self) -> int:
        return max((k.degree for k in self.coeffs), default=0)

    def __call__(self, Z):
        Z = as_matrix(Z, 2)
        acc = np.zeros(Z.shape[:-2], dtype=complex)
        for idx, c in sorted(self.coeffs.items()):
            acc = acc + c * basis_fn(self.lam, idx, Z)
        return acc

    @classmethod
    def random(cls, lam, max_degree, rng):
        idxs = basis_indices(max_degree)
        v = rng.standard_normal(len(idxs)) + 1j * rng.standard_normal(len(idxs))
        return cls(lam, dict(zip(idxs, v / np.sqrt(2.0))))

    @classmethod
    def unit(cls, lam):
        return cls(lam, {BasisIndex(0, 0, 0, 0): 1.0})


# quadrature

@dataclass(frozen=True)
class QuadratureSpec:
    """How integrals over the Cartan domain are evaluated.

    ``mode`` is ``"gauss"`` (product rule; the node counts are upper caps
    and the rule uses the smallest counts that are exact for the degrees
    involved) or ``"mc"`` (uniform sampling of the unit polydisc with
    rejection, ``mc_samples`` draws from ``seed``).
    """

    mode: str = "gauss"
    radial_nodes: int = 64
    angular_nodes: int = 64
    mc_samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("gauss", "mc"):
            raise ValueError(f"unknown quadrature mode {self.mode!r}")
        if min(self.radial_nodes, self.angular_nodes, self.mc_samples) < 1:
            raise ValueError("node and sample counts must be positive")


def _degree_of(f):
    return getattr(f, "degree", None)


def node_counts(lam: int, d1, d2, spec: QuadratureSpec):
    """Node counts ``(n_u, n_theta, n_s, n_alpha)`` for integrands of degree ``d1`` by ``d2``.

    The theta trapezoid kills every term whose bidegree in ``(xi1, xi2)``
    differs between the two factors once ``n_theta > max(d1, d2)``, so the
    remaining rules only need the smaller degree ``e``: ``2e + 1`` alpha
    nodes, and Gauss rules exact for degree ``e + lam - 2`` in ``u`` and
    ``e`` in ``s``. An unbounded side (``None``) puts ``n_theta`` at its
    cap; two unbounded sides fall back to ``DEFAULT_DEGREE``.
    """
    if d1 is None and d2 is None:
        d1 = d2 = DEFAULT_DEGREE
    ra, aa = spec.radial_nodes, spec.angular_nodes
    if d1 is None or d2 is None:
        e = d1 if d2 is None else d2
        n_theta = aa
    else:
        e = min(d1, d2)
        n_theta = min(aa, max(d1, d2) + 1)
    n_alpha = min(aa, 2 * e + 1)
    n_u = min(ra, max(1, ceil((e + lam - 1) / 2)))
    n_s = min(ra, max(1, ceil((e + 1) / 2)))
    return n_u, n_theta, n_s, n_alpha


def _gauss01(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


def hopf_grid(n_s, n_alpha):
    """Unitaries and weights of the ``ds(U)`` rule (total weight pi)."""
    s, ws = _gauss01(n_s)
    al = 2 * np.pi * np.arange(n_alpha) / n_alpha
    S, A = np.meshgrid(s, al, indexing="ij")
    d = np.sqrt(1 - S)
    zd = np.sqrt(S) * np.exp(1j * A)
    U = np.empty(S.shape + (2, 2), dtype=complex)
    U[..., 0, 0] = d
    U[..., 0, 1] = -zd
    U[..., 1, 0] = np.conj(zd)
    U[..., 1, 1] = d
    w = (ws[:, None] / 2) * (2 * np.pi / n_alpha) * np.ones_like(A)
    return U.reshape(-1, 2, 2), w.reshape(-1)


def xi_grid(n_u, n_theta):
    """Diagonal entries and Lebesgue weights ``J |dxi1||dxi2|``."""
    u, wu = _gauss01(n_u)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    wth = 2 * np.pi / n_theta
    U1, T1, U2, T2 = np.meshgrid(u, th, u, th, indexing="ij")
    W1, _, W2, _ = np.meshgrid(wu, th, wu, th, indexing="ij")
    xi1 = np.sqrt(U1) * np.exp(1j * T1)
    xi2 = np.sqrt(U2) * np.exp(1j * T2)
    w = 0.5 * (U1 - U2) ** 2 * (W1 / 2 * wth) * (W2 / 2 * wth)
    return xi1.reshape(-1), xi2.reshape(-1), w.reshape(-1)


class CartanGrid:
    """Product rule on the Cartan domain, produced chunk by chunk.

    Each chunk is ``(Z, w)`` where ``w`` are Lebesgue weights for ``|dZ|``.
    """

    def __init__(self, n_u, n_theta, n_s, n_alpha):
        self.counts = (n_u, n_theta, n_s, n_alpha)
        self.xi1, self.xi2, self.wxi = xi_grid(n_u, n_theta)
        self.U, self.wU = hopf_grid(n_s, n_alpha)

    @property
    def size(self):
        return len(self.wxi) * len(self.wU) ** 2

    def chunks(self, chunk=CHUNK):
        nU = len(self.wU)
        # Xi U2^dag for every (xi, U2) pair, then left-multiplied by a block of U1
        U2d = dagger(self.U)
        XU = np.empty((len(self.wxi), nU, 2, 2), dtype=complex)
        XU[..., 0, :] = self.xi1[:, None, None] * U2d[None, :, 0, :]
        XU[..., 1, :] = self.xi2[:, None, None] * U2d[None, :, 1, :]
        XU = XU.reshape(-1, 2, 2)
        wXU = (self.wxi[:, None] * self.wU[None, :]).reshape(-1)
        per = max(1, chunk // len(wXU))
        for start in range(0, nU, per):
            U1 = self.U[start : start + per]
            Z = np.einsum("kab,pbc->kpac", U1, XU).reshape(-1, 2, 2)
            w = (self.wU[start : start + per, None] * wXU[None, :]).reshape(-1)
            yield Z, w


def _threads():
    try:
        n = int(os.environ.get("CWLAB_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, min(n, os.cpu_count() or 1))


def _reduce_chunks(grid, kernel):
    """Apply ``kernel(Z, w)`` per chunk and sum partials in chunk order."""
    chunks = list(grid.chunks())
    n = _threads()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            parts = list(ex.map(lambda c: kernel(*c), chunks))
    else:
        parts = [kernel(*c) for c in chunks]
    return np.sum(np.stack(parts), axis=0)


def cartan_density(lam, Z):
    """``c_lam det(I - Z Z^dag)^(lam - 4)`` (zero outside the domain)."""
    h = np.real(det2(I2 - Z @ dagger(Z)))
    inside = in_cartan(Z)
    return np.where(inside, c_lambda(lam) * np.where(inside, h, 1.0) ** (lam - 4), 0.0)


def gram_matrix(lam: int, left, right=None, spec: QuadratureSpec = QuadratureSpec(), degree=None):
    """Matrix of inner products ``<left_a | right_b>``.

    Parameters
    ----------
    left, right : sequence of callables
        Vectorized functions of ``(..., 2, 2)`` arrays. ``right`` defaults
        to ``left``.
    degree : (int or None, int or None), optional
        Degree bounds of the two families; by default taken from the
        ``degree`` attribute of the callables (max over each family).

    Returns
    -------
    ndarray
        For ``mode="gauss"`` the matrix. For ``mode="mc"`` a pair
        ``(estimate, standard_error)``.
    """
    _check_lam(lam)
    right = left if right is None else right
    if spec.mode == "mc":
        return _gram_mc(lam, left, right, spec)
    if degree is None:
        degree = (_family_degree(left), _family_degree(right))
    grid = CartanGrid(*node_counts(lam, degree[0], degree[1], spec))

    def kernel(Z, w):
        wt = w * cartan_density(lam, Z)
        F = np.array([f(Z) for f in left])
        G = np.array([g(Z) for g in right])
        return (np.conj(F) * wt) @ G.T

    return _reduce_chunks(grid, kernel)


def _family_degree(fs):
    ds = [_degree_of(f) for f in fs]
    return None if any(d is None for d in ds) else max(ds)


def inner_product(lam: int, f, g, spec: QuadratureSpec = QuadratureSpec(), degree=None):
    """``<f|g>`` over the Cartan domain.

    Returns a complex number for ``mode="gauss"`` and ``(estimate, stderr)``
    for ``mode="mc"``.
    """
    out = gram_matrix(lam, [f], [g], spec, degree)
    if spec.mode == "mc":
        return complex(out[0][0, 0]), float(out[1][0, 0])
    return complex(out[0, 0])


def sample_polydisc(rng, n):
    """Uniform samples of the unit polydisc in the 4 entries of a 2x2 matrix."""
    r = np.sqrt(rng.random((n, 2, 2)))
    return r * np.exp(2j * np.pi * rng.random((n, 2, 2)))


def sample_cartan(rng, n, batch=1 << 16):
    """``n`` uniform (Lebesgue) samples of the Cartan domain by rejection."""
    out = []
    have = 0
    while have < n:
        Z = sample_polydisc(rng, batch)
        Z = Z[in_cartan(Z)]
        out.append(Z)
        have += len(Z)
    return np.concatenate(out)[:n]


def _gram_mc(lam, left, right, spec):
    rng = np.random.default_rng(spec.seed)
    vol = np.pi**4
    n = spec.mc_samples
    F_sum = 0
    F_sq = 0
    done = 0
    while done < n:
        k = min(CHUNK, n - done)
        Z = sample_polydisc(rng, k)
        dens = cartan_density(lam, Z)
        inside = dens > 0
        F = np.zeros((len(left), k), dtype=complex)
        G = np.zeros((len(right), k), dtype=complex)
        Zi = Z[inside]
        for a, f in enumerate(left):
            F[a, inside] = f(Zi)
        for b, g in enumerate(right):
            G[b, inside] = g(Zi)
        vals = np.conj(F)[:, None, :] * G[None, :, :] * dens * vol
        F_sum = F_sum + vals.sum(axis=-1)
        F_sq = F_sq + (np.abs(vals) ** 2).sum(axis=-1)
        done += k
    mean = F_sum / n
    var = np.maximum(F_sq / n - np.abs(mean) ** 2, 0.0)
    return mean, np.sqrt(var / n)


def lebesgue_mc(fn, n: int, seed: int):
    """Monte Carlo ``int_D4 fn(Z) |dZ|`` with its standard error.

    Uniform draws on the unit polydisc (volume ``pi^4``); points outside the
    Cartan domain contribute zero.
    """
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n:
        k = min(CHUNK, n - done)
        Z = sample_polydisc(rng, k)
        inside = in_cartan(Z)
        vals = np.zeros(k, dtype=complex)
        vals[inside] = fn(Z[inside])
        vals *= np.pi**4
        total += vals.sum()
        total_sq += np.sum(np.abs(vals) ** 2)
        done += k
    mean = total / n
    return complex(mean), float(np.sqrt(max(total_sq / n - abs(mean) ** 2, 0.0) / n))


# pullback integration

def holomorphic_jacobian(F, Z, h=1e-3):
    """Complex 4x4 Jacobian of a holomorphic map of 2x2 matrices (4th-order differences).

    Returned with shape ``(..., 4, 4)``; the real Jacobian determinant of the
    map is ``|det|^2``.
    """
    Z = as_matrix(Z, 2)
    cols = []
    for k in range(4):
        E = np.zeros((2, 2), dtype=complex)
        E.flat[k] = 1.0
        d = (-F(Z + 2 * h * E) + 8 * F(Z + h * E) - 8 * F(Z - h * E) + F(Z - 2 * h * E)) / (12 * h)
        cols.append(d.reshape(d.shape[:-2] + (4,)))
    return np.stack(cols, axis=-1)


def pullback_gram(lam, left, right, transform, target_density, spec, degree):
    """Gram matrix over ``transform(D4)`` computed on Cartan-domain nodes.

    For target points ``X = transform(Z)`` the integrand is
    ``conj(f(X)) g(X) target_density(X) |det dX/dZ|^2``, integrated against
    ``|dZ|``. The Jacobian is numerical, so no closed form for it is assumed.
    """
    grid = CartanGrid(*node_counts(lam, degree[0], degree[1], spec))

    def kernel(Z, w):
        X = transform(Z)
        jac = np.abs(np.linalg.det(holomorphic_jacobian(transform, Z))) ** 2
        wt = w * jac * target_density(X)
        F = np.array([f(X) for f in left])
        G = np.array([g(X) for g in right])
        return (np.conj(F) * wt) @ G.T

    return _reduce_chunks(grid, kernel)


# radial and angular pieces

def radial_integral(lam: int, j2: int, m: int, q2: int) -> float:
    """Closed form of ``4 pi^2 c_lam int int J Omega rho1^(2(j+q+m)+1) rho2^(2(j-q+m)+1)``."""
    return float(radial_integral_pi2(lam, j2, m, q2)) / pi**2


def radial_integral_pi2(lam: int, j2: int, m: int, q2: int) -> Fraction:
    """``pi^2`` times :func:`radial_integral`, exactly."""
    _check_lam(lam)
    check_labels(j2, q2, q2)
    jm = Fraction(j2, 2) + m
    q = Fraction(q2, 2)
    num = jm**2 + (jm + 2 * q**2 + 1) * lam - 5 * q**2 - 1
    a = int(jm + q)
    b = int(jm - q)
    return num / ((lam - 1) * comb(a + lam - 1, lam - 1) * comb(b + lam - 1, lam - 1))


def radial_integral_numeric(lam: int, j2: int, m: int, q2: int, n: int = 40) -> float:
    """The same double integral by a 2-D Gauss-Legendre rule in ``u = rho^2``."""
    _check_lam(lam)
    u, w = _gauss01(n)
    a = (j2 + q2) // 2 + m
    b = (j2 - q2) // 2 + m
    U1, U2 = np.meshgrid(u, u, indexing="ij")
    W = np.outer(w, w) / 4
    J = 0.5 * (U1 - U2) ** 2
    Om = ((1 - U1) * (1 - U2)) ** (lam - 4)
    return float(4 * pi**2 * c_lambda(lam) * np.sum(W * J * Om * U1**a * U2**b))


def radial_sum_identity(lam: int, j2: int, m: int):
    """``(sum_q pi^2 R^q_{j+m}, (2j+1)(lam-1) / (C(m+lam-2, lam-2) C(m+2j+lam-1, lam-2)))``."""
    lhs = sum(radial_integral_pi2(lam, j2, m, q) for q in range(-j2, j2 + 1, 2))
    rhs = Fraction((j2 + 1) * (lam - 1), comb(m + lam - 2, lam - 2) * comb(m + j2 + lam - 1, lam - 2))
    return lhs, rhs


def angular_overlap(j2, q1_2, j2p, q1p_2, q2_2, n_s=24, n_alpha=48):
    """``int ds(U) conj(D^j_{q1 q2}(U)) D^j'_{q1' q2}(U)`` over Hopf unitaries."""
    U, w = hopf_grid(n_s, n_alpha)
    return complex(np.sum(w * np.conj(wigner_d(j2, q1_2, q2_2, U)) * wigner_d(j2p, q1p_2, q2_2, U)))


# kernels

def bergman_kernel(lam: int, Z, Zp):
    """``det(I - Z^dag Z')^(-lam)``; accepts ``lam >= 2``."""
    _check_lam(lam, 2)
    Z, Zp = as_matrix(Z, 2), as_matrix(Zp, 2)
    if not (np.all(in_cartan(Z)) and np.all(in_cartan(Zp))):
        raise ValueError("point outside the Cartan domain")
    return det2(I2 - dagger(Z) @ Zp) ** (-int(lam))


def bergman_series(lam: int, Z, Zp, degree_max: int = 40):
    """``sum conj(phi_idx(Z)) phi_idx(Z')`` over basis labels of degree ``<= degree_max``."""
    _check_lam(lam)
    Z, Zp = as_matrix(Z, 2), as_matrix(Zp, 2)
    dZ, dZp = np.conj(det2(Z)), det2(Zp)
    acc = np.zeros(np.broadcast_shapes(Z.shape[:-2], Zp.shape[:-2]), dtype=complex)
    for j2 in range(degree_max + 1):
        block = np.zeros_like(acc)
        for q1 in range(j2, -j2 - 1, -2):
            for q2 in range(j2, -j2 - 1, -2):
                block = block + np.conj(wigner_d(j2, q1, q2, Z)) * wigner_d(j2, q1, q2, Zp)
        for m in range((degree_max - j2) // 2 + 1):
            acc = acc + float(norm_const_sq(lam, j2, m)) * (dZ * dZp) ** m * block
    return acc


def kernel_evaluable(lam, Z0):
    """``Z -> K(Z0, Z) = det(I - Z0^dag Z)^(-lam)``, so that ``<K(Z0, .)|f> = f(Z0)``."""
    Z0 = as_matrix(Z0, 2)
    return Evaluable(lambda Z: det2(I2 - dagger(Z0) @ Z) ** (-int(lam)), None)


# representations

def rep_apply(lam: int, g, phi) -> Evaluable:
    """``(U(g) phi)(Z) = det(D^dag - B^dag Z)^(-lam) phi(g^-1 Z)``."""
    _check_lam(lam)

    def out(Z):
        return multiplier(g, Z, lam, check=False) * phi(act_cartan(g, Z, check=False))

    return Evaluable(out, None)


def to_tube(lam: int, phi) -> Evaluable:
    """``W -> 2^(2 lam) det(I - iW)^(-lam) phi(Z(W))``."""
    _check_lam(lam)

    def out(W):
        W = as_matrix(W, 2)
        return 2.0 ** (2 * lam) * det2(I2 - 1j * W) ** (-int(lam)) * phi(cayley(W))

    return Evaluable(out, None)


def tube_rep_apply(lam: int, f, F) -> Evaluable:
    """``W -> det(R^dag - T^dag W)^(-lam) F(f^-1 W)``."""
    finv = f.inverse()

    def out(W):
        return tube_multiplier(f, W, lam) * F(act_tube(finv, W, check=False))

    return Evaluable(out, None)


def tube_kernel(lam: int, W, Wp):
    """``det((i/2)(W^dag - W'))^(-lam)``."""
    W, Wp = as_matrix(W, 2), as_matrix(Wp, 2)
    if not (np.all(in_tube(W)) and np.all(in_tube(Wp))):
        raise ValueError("point outside the future tube")
    return det2(0.5j * (dagger(W) - Wp)) ** (-int(lam))


def tube_density(lam: int, W):
    """``c_lam / 2^4 det(Im W)^(lam - 4)`` per unit ``prod d Re w_mu d Im w_mu``."""
    return c_lambda(lam) / 16 * np.real(det2(imag_part(W))) ** (lam - 4)


#: |d(entries of W)| = ENTRY_JACOBIAN * |d(w_mu)| for W = w_mu sigma^mu
ENTRY_JACOBIAN = 16.0


def tube_gram(lam: int, left, right, spec: QuadratureSpec = QuadratureSpec(), degree=(4, 4)):
    """Gram matrix on the future tube, computed by pulling back to the Cartan domain.

    The measure is ``c_lam/16 det(Y)^(lam-4) |dW|`` with ``|dW|`` in the
    Minkowski coordinates ``w_mu``; the Cayley Jacobian is taken numerically.
    ``degree`` should bound the degrees of the Cartan-side preimages.
    """
    _check_lam(lam)
    return pullback_gram(
        lam, left, right, cayley_inv, lambda W: tube_density(lam, W) / ENTRY_JACOBIAN, spec, degree
    )


def rep_gram_pullback(lam: int, g, left, right=None, spec: QuadratureSpec = QuadratureSpec(), degree=(4, 4)):
    """Gram matrix of ``U(g) left`` against ``U(g) right``, integrated in the variable ``g^-1 Z``.

    With ``Z = g . Z~`` the integrand becomes polynomial in ``Z~`` times the
    density ratio; the Jacobian of ``Z~ -> g . Z~`` is numerical.
    """
    right = left if right is None else right
    ginv = g.inverse()
    UL = [rep_apply(lam, g, f) for f in left]
    UR = [rep_apply(lam, g, f) for f in right]
    return pullback_gram(
        lam, UL, UR, lambda Z: act_cartan(ginv, Z, check=False), lambda Z: cartan_density(lam, Z), spec, degree
    )
