"""Continuous wavelet transform on the Cartan domain.

The mother wavelet is the constant function ``psi = 1`` and the coherent
states are ``psi_g = U(g) psi``, ``psi_g(Z) = det(D^dag - B^dag Z)^(-lam)``.
Their coefficients in the orthonormal basis are

    psi^_idx(g) = conj(det(D)^(-lam) phi_idx(B D^-1)),

and the frame operator ``int |psi_g><psi_g| dmu(g)`` equals ``c_psi`` times
the identity, with ``c_psi = vol(U(2))^2 / c_lam`` and ``vol(U(2)) = (2 pi)^3 / 2``.

The Haar measure factorizes as ``dmu = dmu_{G/H} dmu_H`` with
``dmu_{G/H} = det(I - Z Z^dag)^-4 |dZ|``; every integrand used here is
constant along the compact fiber ``H = U(2) x U(2)``, so the fiber integral
is the factor ``vol(U(2))^2`` and only the Cartan domain is sampled.
"""

from __future__ import annotations

from functools import lru_cache
from math import pi

import numpy as np

from .group import GroupElementDiag, GroupElementOffdiag, upsilon
from .hilbert4d import (
    BasisIndex,
    CartanGrid,
    CoeffVector,
    QuadratureSpec,
    _check_lam,
    _reduce_chunks,
    basis_fn,
    c_lambda,
    lebesgue_mc,
    node_counts,
    sample_polydisc,
)
from .matrices import as_matrix, dagger, det2, hermitian_sqrt2, in_cartan, inv2

I2 = np.eye(2, dtype=complex)

#: volume of U(2): 2 pi times the area of the unit 3-sphere, halved
U2_VOLUME = (2 * pi) ** 3 / 2


def admissibility_constant(lam: int) -> float:
    """``c_psi = vol(U(2))^2 / c_lam``."""
    _check_lam(lam)
    return U2_VOLUME**2 / c_lambda(lam)


def admissibility_mc(lam: int, n: int = 1_000_000, seed: int = 0):
    """Monte Carlo estimate of ``int_{G/H} det(I - Z Z^dag)^lam dmu_{G/H}``.

    The exact value is ``1 / c_lam``. Returns ``(estimate, stderr)``.
    """
    _check_lam(lam)

    def fn(Z):
        h = np.real(det2(I2 - Z @ dagger(Z)))
        return h**lam * h**-4

    est, err = lebesgue_mc(fn, n, seed)
    return est.real, err


# coherent states

def _blocks(g):
    if isinstance(g, GroupElementDiag):
        return g.B, g.D
    B, D = g
    return as_matrix(B, 2), as_matrix(D, 2)


def coherent_coeff(lam: int, g, idx: BasisIndex):
    """``conj(det(D)^(-lam) phi_idx(B D^-1))``.

    ``g`` is a :class:`GroupElementDiag` or a pair of (batched) blocks ``(B, D)``.
    """
    _check_lam(lam)
    B, D = _blocks(g)
    dD = det2(D)
    if np.any(np.abs(dD) < 1e-300):
        raise ValueError("singular D block")
    Zt = B @ inv2(D)
    return np.conj(dD ** (-lam) * basis_fn(lam, idx, Zt))


def coherent_state(lam: int, g: GroupElementDiag):
    """``Z -> det(D^dag - B^dag Z)^(-lam)``."""

    def psi_g(Z):
        return det2(dagger(g.D) - dagger(g.B) @ as_matrix(Z, 2)) ** (-int(lam))

    return psi_g


def section_blocks(Z):
    """Blocks ``(B, D)`` of the section ``[[D1, Z D2], [Z^dag D1, D2]]`` over (batched) ``Z``."""
    Z = as_matrix(Z, 2)
    D = hermitian_sqrt2(inv2(I2 - dagger(Z) @ Z))
    return Z @ D, D


def haar_density(Z):
    return np.real(det2(I2 - Z @ dagger(Z))) ** -4


# frame operator

def frame_matrix(lam: int, left, right=None, spec: QuadratureSpec = QuadratureSpec()):
    """Matrix ``int psi^_a(g) conj(psi^_b(g)) dmu(g)`` over basis labels.

    Sections over the Cartan domain carry the coset integral and the fiber
    contributes ``vol(U(2))^2``. Gauss mode returns the matrix; MC mode
    returns ``(estimate, stderr)``.
    """
    _check_lam(lam)
    right = left if right is None else right
    vol = U2_VOLUME**2

    def integrand(Z):
        B, D = section_blocks(Z)
        P = np.array([coherent_coeff(lam, (B, D), a) for a in left])
        Q = P if right is left else np.array([coherent_coeff(lam, (B, D), b) for b in right])
        return P, np.conj(Q), haar_density(Z)

    if spec.mode == "mc":
        rng = np.random.default_rng(spec.seed)
        Z = sample_polydisc(rng, spec.mc_samples)
        Z = Z[in_cartan(Z)]
        P, Qc, h = integrand(Z)
        vals = P[:, None, :] * Qc[None, :, :] * h * np.pi**4 * vol
        n = spec.mc_samples
        mean = vals.sum(axis=-1) / n
        sq = (np.abs(vals) ** 2).sum(axis=-1) / n
        return mean, np.sqrt(np.maximum(sq - np.abs(mean) ** 2, 0) / n)
    d1 = max(a.degree for a in left)
    d2 = max(b.degree for b in right)
    grid = CartanGrid(*node_counts(lam, d1, d2, spec))

    def kernel(Z, w):
        P, Qc, h = integrand(Z)
        return (P * (w * h * vol)) @ Qc.T

    return _reduce_chunks(grid, kernel)


def frame_element(lam: int, a: BasisIndex, b: BasisIndex, spec: QuadratureSpec = QuadratureSpec()):
    """Single entry of :func:`frame_matrix`."""
    out = frame_matrix(lam, [a], [b], spec)
    if spec.mode == "mc":
        return complex(out[0][0, 0]), float(out[1][0, 0])
    return complex(out[0, 0])


# analysis and synthesis

class WaveletCoefficients:
    """``g -> Phi(g) = <psi_g|phi> / c_psi`` for a finite expansion ``phi``.

    Evaluated in coefficient space as
    ``(1/c_psi) sum_idx conj(psi^_idx(g)) phi^_idx``.
    """

    def __init__(self, lam: int, signal: CoeffVector):
        self.lam = lam
        self.signal = signal
        self.c_psi = admissibility_constant(lam)

    def __call__(self, g):
        B, D = _blocks(g)
        acc = np.zeros(np.broadcast_shapes(B.shape[:-2], D.shape[:-2]), dtype=complex)
        for idx, c in sorted(self.signal.coeffs.items()):
            acc = acc + np.conj(coherent_coeff(self.lam, (B, D), idx)) * c
        return acc / self.c_psi


def analyze(lam: int, signal: CoeffVector) -> WaveletCoefficients:
    _check_lam(lam)
    if signal.lam != lam:
        raise ValueError("signal was expanded for a different lambda")
    return WaveletCoefficients(lam, signal)


def analyze_function(lam: int, phi, g):
    """``(1/c_psi) det(D)^(-lam) phi(B D^-1)`` for any holomorphic ``phi``.

    By the reproducing property this equals ``<psi_g|phi>/c_psi``; it does
    not need an expansion of ``phi``.
    """
    B, D = _blocks(g)
    return det2(D) ** (-lam) * phi(B @ inv2(D)) / admissibility_constant(lam)


@lru_cache(maxsize=32)
def _cached_frame(lam, idxs, spec):
    return frame_matrix(lam, list(idxs), None, spec)


def reconstruct_coeffs(Phi: WaveletCoefficients, spec: QuadratureSpec = QuadratureSpec()):
    """Coefficients of ``int Phi(g) psi_g dmu(g)`` for the analyzed signal.

    The group integral acts on the finite expansion through the frame
    matrix; ``r_b = (1/c_psi) sum_a F_{ba} phi^_a`` with ``F`` computed by
    the quadrature in :func:`frame_matrix` (exact for polynomials).
    """
    idxs = tuple(sorted(Phi.signal.coeffs))
    F = _cached_frame(Phi.lam, idxs, spec)
    c = np.array([Phi.signal.coeffs[i] for i in idxs])
    r = F @ c / Phi.c_psi
    return CoeffVector(Phi.lam, dict(zip(idxs, r)))


def synthesize(lam: int, Phi: WaveletCoefficients, Z, spec: QuadratureSpec = QuadratureSpec()):
    """Reconstruction ``int_G Phi(g) psi_g(Z) dmu(g)`` at the points ``Z``.

    ``mode="gauss"`` evaluates in coefficient space (exact up to rounding
    for bounded-degree signals). ``mode="mc"`` samples the group integral
    directly over sections and returns ``(estimate, stderr)``.
    """
    Z = as_matrix(Z, 2)
    if spec.mode == "gauss":
        return reconstruct_coeffs(Phi, spec)(Z)
    return synthesize_mc(lam, Phi, Z, spec.mc_samples, spec.seed)


def synthesize_mc(lam: int, Phi: WaveletCoefficients, Z, n: int, seed: int):
    """Monte Carlo group integral ``vol(U(2))^2 int Phi(s(Zt)) psi_{s(Zt)}(Z) dmu_{G/H}(Zt)``."""
    Z = as_matrix(Z, 2)
    flat = Z.reshape(-1, 2, 2)
    rng = np.random.default_rng(seed)
    Zt = sample_polydisc(rng, n)
    Zt = Zt[in_cartan(Zt)]
    B, D = section_blocks(Zt)
    phi_g = Phi((B, D))
    w = haar_density(Zt) * np.pi**4 * U2_VOLUME**2
    est = np.empty(len(flat), dtype=complex)
    err = np.empty(len(flat))
    for k, z in enumerate(flat):
        psi = det2(dagger(D) - dagger(B) @ z) ** (-lam)
        vals = np.zeros(n, dtype=complex)
        vals[: len(Zt)] = phi_g * psi * w
        est[k] = vals.mean()
        err[k] = np.std(vals) / np.sqrt(n)
    return est.reshape(Z.shape[:-2]), err.reshape(Z.shape[:-2])


# isotropy

def isotropy_check(f: GroupElementOffdiag, tol: float = 1e-10) -> bool:
    """True iff ``upsilon(f)`` is block diagonal, i.e. ``S = -T`` and ``Q = R``.

    Such elements fix the mother wavelet up to a phase.
    """
    g = upsilon(f)
    return bool(np.max(np.abs(g.B)) <= tol)


def isotropy_report(f: GroupElementOffdiag, tol: float = 1e-10) -> dict:
    """Isotropy verdict with the derived constraints and the family it falls in.

    ``family`` is ``"unitary"`` (``S = 0``, ``R`` unitary), ``"null"``
    (``det S = 0``, ``S != 0``) or ``None`` when not isotropic.
    """
    iso = isotropy_check(f, tol)
    R, S = f.R, f.S
    c1 = float(np.max(np.abs(dagger(S) @ S + dagger(R) @ R - I2)))
    c2 = float(np.max(np.abs(dagger(S) @ R - dagger(R) @ S)))
    family = None
    if iso:
        if np.max(np.abs(S)) <= tol:
            family = "unitary"
        elif abs(det2(S)) <= tol:
            family = "null"
        else:
            family = "other"
    return {"isotropic": iso, "unitarity_residual": c1, "hermiticity_residual": c2, "family": family}


def null_isotropy_element(b, scale: float = 0.25) -> GroupElementOffdiag:
    """Isotropy element with ``S = -T = scale * b_mu sigma^mu`` for a light-like ``b``.

    ``R = Q`` is the positive root of ``I - S^dag S`` (needs ``|scale| * |S| < 1``),
    which makes ``S^dag R = R^dag S`` hold for hermitian ``S``.
    """
    from .group import minkowski_matrix

    S = scale * minkowski_matrix(b)
    if abs(det2(S)) > 1e-12:
        raise ValueError("b is not light-like")
    R = hermitian_sqrt2(I2 - dagger(S) @ S)
    return GroupElementOffdiag(R, S, -S, R)


# mother wavelet on the tube

def mother_tube(lam: int, w):
    """``2^(2 lam) (1 - i w)^(-2 lam)``: the mother wavelet on ``W = w I``."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    return 2.0 ** (2 * lam) * (1 - 1j * np.asarray(w, dtype=complex)) ** (-2 * lam)


def mother_slice(lam: int, xmin, xmax, ymin, ymax, nx: int, ny: int):
    """Table of ``(x, y, |psi~|, arg psi~)`` on a rectangle of ``w = x + iy``.

    Rows run over ``y`` (outer) and ``x`` (inner); ``arg`` is the principal
    value in ``(-pi, pi]``.
    """
    if not ymin > 0:
        raise ValueError("the grid must lie in y > 0")
    if ymax < ymin or xmax < xmin or nx < 1 or ny < 1:
        raise ValueError("invalid grid")
    xs = np.linspace(xmin, xmax, nx)
    ys = np.linspace(ymin, ymax, ny)
    Y, X = np.meshgrid(ys, xs, indexing="ij")
    v = mother_tube(lam, X + 1j * Y)
    arg = np.angle(v)
    arg = np.where(arg <= -np.pi, np.pi, arg)
    return np.column_stack([X.ravel(), Y.ravel(), np.abs(v).ravel(), arg.ravel()])
