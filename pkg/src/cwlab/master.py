"""Truncated determinant-power series and their exact coefficients.

Three expansions of ``det(I - tX)^(-lambda)`` are provided:

* :func:`smt_lhs`, the classical case ``lambda = 1`` as a sum of
  characters ``sum_alpha D^p_{alpha alpha}``;
* :func:`extended_smt_lhs_n2`, the 2x2 series in ``det(X)^n`` times Wigner
  characters;
* :func:`msmt_lhs`, the N x N series in products of weighted principal
  minor sums times characters, with coefficients from
  :func:`msmt_coefficient`.

Series are truncated by total homogeneity degree in ``X``. Coefficients are
exact (``int`` / ``Fraction``) and converted to floats only when a term is
formed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod

import numpy as np

from .matrices import as_matrix, det, principal_minor_sums
from .solidharm import trace_sum
from .wigner import wigner_character


def multinomial(parts) -> int:
    """``(sum parts)! / prod(parts!)``; 1 for an empty tuple."""
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        return 0
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


def gbinom(n, m: int) -> Fraction:
    """Generalized binomial ``n (n-1) ... (n-m+1) / m!`` for rational ``n``; 0 if ``m < 0``."""
    if m < 0:
        return Fraction(0)
    n = Fraction(n)
    num = Fraction(1)
    for i in range(m):
        num *= n - i
    return num / factorial(m)


def _check_lambda(lam):
    if int(lam) != lam or lam < 2:
        raise ValueError(f"lambda must be an integer >= 2, got {lam}")


# classical series

def smt_lhs(X, t=1.0, degree_max: int = 40):
    """Partial sum ``sum_{p <= degree_max} t^p sum_alpha D^p_{alpha alpha}(X)``.

    For 2x2 input the characters are Wigner characters (``p = 2j``); larger
    ``N`` uses solid harmonics. The limit is ``det(I - tX)^-1``.
    """
    X = as_matrix(X)
    N = X.shape[-1]
    acc = np.zeros(X.shape[:-2], dtype=complex)
    for p in range(degree_max + 1):
        chi = wigner_character(p, X) if N == 2 else trace_sum(N, p, X)
        acc = acc + t**p * chi
    return acc


# lambda-extended series, N = 2

@lru_cache(maxsize=None)
def emsmt_weight(lam: int, j2: int, n: int) -> Fraction:
    """Exact weight of ``det(X)^n chi_j(X)`` in the 2x2 extended series."""
    return Fraction((j2 + 1) * comb(n + lam - 2, lam - 2) * comb(n + j2 + lam - 1, lam - 2), lam - 1)


def extended_smt_lhs_n2(X, t=1.0, lam: int = 2, degree_max: int = 40):
    """Partial sum over ``2j + 2n <= degree_max`` of the 2x2 extended series.

    Each term is ``w(lam, j, n) t^(2j+2n) det(X)^n chi_j(X)``; the limit is
    ``det(I - tX)^(-lam)``. Accepts a batch of matrices.
    """
    _check_lambda(lam)
    X = as_matrix(X, 2)
    d = det(X)
    chis = [wigner_character(j2, X) for j2 in range(degree_max + 1)]
    acc = np.zeros(X.shape[:-2], dtype=complex)
    for j2 in range(degree_max + 1):
        for n in range((degree_max - j2) // 2 + 1):
            w = float(emsmt_weight(lam, j2, n))
            acc = acc + w * t ** (j2 + 2 * n) * d**n * chis[j2]
    return acc


# general coefficient

def _vectors_below(bound):
    return product(*(range(b + 1) for b in bound))


@lru_cache(maxsize=None)
def msmt_coefficient(N: int, lam: int, p: int, sigma: tuple) -> Fraction:
    """Exact coefficient ``C^lam_{p,sigma}`` of the N x N extended series.

    ``sigma = (sigma_2, ..., sigma_N)``. The nested sum over
    ``gamma^(0), ..., gamma^(lam-3)`` is evaluated by dynamic programming
    over the running partial sum ``Gamma_k = gamma^(0) + ... + gamma^(k)``,
    since the ``k``-th factor depends only on ``gamma^(k)`` and ``Gamma_k``.
    For ``lam = 2`` there are no gamma sums and the result is the
    multinomial of ``sigma``.
    """
    _check_lambda(lam)
    sigma = tuple(int(s) for s in sigma)
    if len(sigma) != N - 1:
        raise ValueError(f"sigma must have N-1 = {N - 1} parts")
    weights = range(2, N + 1)
    states = {tuple(0 for _ in sigma): 1}
    for k in range(lam - 2):
        nxt = {}
        for G, val in states.items():
            room = tuple(s - g for s, g in zip(sigma, G))
            for gam in _vectors_below(room):
                G2 = tuple(g + c for g, c in zip(G, gam))
                factor = multinomial(gam) * (p + k + 2 + sum(w * g for w, g in zip(weights, G2)))
                nxt[G2] = nxt.get(G2, 0) + val * factor
        states = nxt
    total = sum(val * multinomial(tuple(s - g for s, g in zip(sigma, G))) for G, val in states.items())
    return Fraction(total, factorial(lam - 2))


def msmt_coefficient_bruteforce(N: int, lam: int, p: int, sigma) -> Fraction:
    """Direct nested enumeration of the same coefficient (slow; for cross-checks)."""
    _check_lambda(lam)
    sigma = tuple(sigma)
    weights = range(2, N + 1)

    def rec(k, G, acc):
        if k == lam - 2:
            return acc * multinomial(tuple(s - g for s, g in zip(sigma, G)))
        total = 0
        for gam in _vectors_below(tuple(s - g for s, g in zip(sigma, G))):
            G2 = tuple(g + c for g, c in zip(G, gam))
            f = multinomial(gam) * (p + k + 2 + sum(w * g for w, g in zip(weights, G2)))
            total += rec(k + 1, G2, acc * f)
        return total

    return Fraction(rec(0, tuple(0 for _ in sigma), 1), factorial(lam - 2))


def coef2(lam: int, p: int, sigma2: int) -> int:
    """Closed form of the coefficient for N = 2."""
    return comb(lam - 2 + sigma2, lam - 2) * comb(lam - 1 + p + sigma2, lam - 2)


def coef3(lam: int, p: int, sigma2: int, sigma3: int) -> Fraction:
    """Closed form of the coefficient for N = 3 (generalized binomials)."""
    xi = lam % 2
    total = Fraction(0)
    for i in range(1, (lam - xi) // 2 + 1):
        term = gbinom(lam - i + p + sigma2 + Fraction(3 * sigma3, 2), lam - 2 * i)
        for j in range(1, i):
            term *= Fraction(sigma3 - 2 * (j - 1), 8 * j)
        total += term
    return multinomial((sigma2, sigma3)) * comb(lam - 2 + sigma2 + sigma3, lam - 2) * total


def coef_low_lambda(N: int, lam: int, p: int, sigma) -> Fraction:
    """Closed form of the coefficient claimed for ``2 <= lam <= 5`` and any N."""
    sigma = tuple(sigma)
    s = sum(sigma)
    half = Fraction(sum(k * sk for k, sk in zip(range(2, N + 1), sigma)), 2)
    extra = Fraction(sum((k - 2) * k * sk for k, sk in zip(range(2, N + 1), sigma) if k >= 3), 24)
    brace = gbinom(lam - 1 + p + half, lam - 2) + gbinom(lam - 2 + p + half, lam - 4) * extra
    return multinomial(sigma) * comb(lam - 2 + s, lam - 2) * brace


def sigma_indices(N: int, budget: int):
    """All ``(sigma_2..sigma_N)`` with ``sum k sigma_k <= budget``."""
    bounds = [budget // k for k in range(2, N + 1)]
    for s in _vectors_below(bounds):
        if sum(k * sk for k, sk in zip(range(2, N + 1), s)) <= budget:
            yield s


def t_hat(X):
    """Weighted minor sums ``(-1)^q (q-1) T_q(X)`` for ``q = 2..N`` (last axis)."""
    T = principal_minor_sums(X)
    N = T.shape[-1] - 1
    q = np.arange(2, N + 1)
    return ((-1.0) ** q * (q - 1)) * T[..., 2:]


def msmt_lhs(X, t=1.0, lam: int = 2, degree_max: int = 18):
    """Partial sum of the N x N extended series up to total degree ``degree_max``.

    Terms are ``(p+1)/(lam-1) C^lam_{p,sigma} t^d That(X)^sigma
    sum_alpha D^p_{alpha alpha}(X)`` with ``d = p + sum_k k sigma_k``.
    """
    _check_lambda(lam)
    X = as_matrix(X)
    N = X.shape[-1]
    if N < 2:
        raise ValueError("msmt_lhs needs N >= 2")
    th = t_hat(X)
    traces = [trace_sum(N, p, X) for p in range(degree_max + 1)]
    acc = np.zeros(X.shape[:-2], dtype=complex)
    for sigma in sigma_indices(N, degree_max):
        wdeg = sum(k * s for k, s in zip(range(2, N + 1), sigma))
        mono = np.ones(X.shape[:-2], dtype=complex)
        for i, s in enumerate(sigma):
            mono = mono * th[..., i] ** s
        for p in range(degree_max - wdeg + 1):
            c = Fraction(p + 1, lam - 1) * msmt_coefficient(N, lam, p, sigma)
            acc = acc + float(c) * t ** (p + wdeg) * mono * traces[p]
    return acc


# binomial identity

def binomial_identity(lam: int, p: int, n: int):
    """Both sides ``(F(n), G(n))`` of the telescoping binomial identity, exactly.

    ``F(n) = 1/(lam-1) sum_{m<=n} C(m+lam-2, lam-2) C(m+p+lam-1, lam-2) (lam+p+2m)``
    and ``G(n) = C(n+lam-1, lam-1) C(n+p+lam, lam-1)``.
    """
    _check_lambda(lam)
    F = Fraction(
        sum(comb(m + lam - 2, lam - 2) * comb(m + p + lam - 1, lam - 2) * (lam + p + 2 * m) for m in range(n + 1)),
        lam - 1,
    )
    G = Fraction(comb(n + lam - 1, lam - 1) * comb(n + p + lam, lam - 1))
    return F, G


# convergence

def convergence_ok(X) -> np.ndarray:
    """Sufficient convergence test for 2x2 ``X``:
    ``|x11| < 1``, ``|x22| < 1``, ``|x12 x21| < 1`` and ``|det X| < 1``."""
    X = as_matrix(X, 2)
    return (
        (np.abs(X[..., 0, 0]) < 1)
        & (np.abs(X[..., 1, 1]) < 1)
        & (np.abs(X[..., 0, 1] * X[..., 1, 0]) < 1)
        & (np.abs(det(X)) < 1)
    )
