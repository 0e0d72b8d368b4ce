"""SU(N) solid harmonics built from integer matrices with fixed margins.

For compositions ``alpha, beta`` of ``p`` into ``N`` parts,

    D^p_{alpha beta}(X) = sqrt(alpha! beta!) * sum_A X^A / A!

where ``A`` runs over nonnegative integer matrices with row sums ``alpha``
and column sums ``beta``, ``X^A = prod x_ij^a_ij`` and ``A! = prod a_ij!``.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial, prod, sqrt

import numpy as np

from .matrices import as_matrix


@lru_cache(maxsize=None)
def compositions(N: int, p: int) -> tuple:
    """All compositions of ``p`` into ``N`` nonnegative parts, lexicographically descending.

    >>> compositions(2, 2)
    ((2, 0), (1, 1), (0, 2))
    """
    if N < 1:
        raise ValueError("N must be positive")
    if p < 0:
        raise ValueError("p must be nonnegative")
    if N == 1:
        return ((p,),)
    out = []
    for first in range(p, -1, -1):
        for rest in compositions(N - 1, p - first):
            out.append((first,) + rest)
    return tuple(out)


def _bounded_rows(total, budgets):
    """Rows with the given sum whose entries respect the column budgets."""
    n = len(budgets)
    if n == 1:
        if total <= budgets[0]:
            yield (total,)
        return
    room = sum(budgets[1:])
    for a in range(min(total, budgets[0]), max(0, total - room) - 1, -1):
        for rest in _bounded_rows(total - a, budgets[1:]):
            yield (a,) + rest


@lru_cache(maxsize=None)
def margin_matrices(alpha: tuple, beta: tuple) -> tuple:
    """Nonnegative integer matrices with row sums ``alpha`` and column sums ``beta``.

    Rows are filled one at a time within the remaining column budgets; the
    last row is forced. Each matrix is returned as a tuple of row tuples.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same length")
    if min(alpha + beta, default=0) < 0:
        raise ValueError("margins must be nonnegative")
    if sum(alpha) != sum(beta):
        raise ValueError(f"weight mismatch: {sum(alpha)} != {sum(beta)}")
    out = []

    def fill(i, budgets, rows):
        if i == len(alpha) - 1:
            out.append(tuple(rows) + (tuple(budgets),))
            return
        for row in _bounded_rows(alpha[i], budgets):
            fill(i + 1, tuple(b - a for b, a in zip(budgets, row)), rows + [row])

    fill(0, beta, [])
    return tuple(out)


def _fact_prod(values) -> int:
    return prod(factorial(v) for v in values)


@lru_cache(maxsize=None)
def _harmonic_table(alpha: tuple, beta: tuple):
    mats = margin_matrices(alpha, beta)
    N = len(alpha)
    exps = np.array([[a for row in A for a in row] for A in mats], dtype=np.int64).reshape(-1, N * N)
    inv = np.array([1.0 / _fact_prod(a for row in A for a in row) for A in mats])
    # sqrt(alpha! beta!) stays an exact integer until the single root
    pref = sqrt(_fact_prod(alpha) * _fact_prod(beta))
    return exps, pref * inv


@lru_cache(maxsize=None)
def _trace_table(N: int, p: int):
    """Exponents and integer weights alpha!/A! of sum_alpha D^p_{alpha alpha}."""
    exps, coefs = [], []
    for alpha in compositions(N, p):
        fa = _fact_prod(alpha)
        for A in margin_matrices(alpha, alpha):
            flat = [a for row in A for a in row]
            exps.append(flat)
            coefs.append(float(fa // _fact_prod(flat)))
    return np.array(exps, dtype=np.int64).reshape(-1, N * N), np.array(coefs)


def _monomials(X, exps, p):
    """Evaluate ``X^A`` for every exponent row of ``exps``; batch axes first."""
    N = X.shape[-1]
    flat = X.reshape(X.shape[:-2] + (N * N,))
    powers = flat[..., :, None] ** np.arange(p + 1)
    cols = np.arange(N * N)
    return np.prod(powers[..., cols, exps], axis=-1)


def solid_harmonic(p: int, alpha, beta, X):
    """Solid harmonic ``D^p_{alpha beta}(X)``; homogeneous of degree ``p``.

    Parameters
    ----------
    p : int
        Common weight of ``alpha`` and ``beta``.
    alpha, beta : sequence of int
        Compositions of ``p`` into ``N`` parts.
    X : array_like, shape (..., N, N)

    Returns
    -------
    complex or ndarray
    """
    alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
    if sum(alpha) != p or sum(beta) != p:
        raise ValueError("alpha and beta must both have weight p")
    X = as_matrix(X, len(alpha))
    exps, coefs = _harmonic_table(alpha, beta)
    return _monomials(X, exps, p) @ coefs


def trace_sum(N: int, p: int, X):
    """``sum_{alpha |- p} D^p_{alpha alpha}(X)`` evaluated from cached tables."""
    X = as_matrix(X, N)
    if p == 0:
        return np.ones(X.shape[:-2], dtype=complex)
    exps, coefs = _trace_table(N, p)
    return _monomials(X, exps, p) @ coefs


def solid_block(p: int, X):
    """Matrix of all ``D^p_{alpha beta}(X)`` with rows and columns in composition order."""
    X = as_matrix(X)
    comps = compositions(X.shape[-1], p)
    out = np.empty(X.shape[:-2] + (len(comps), len(comps)), dtype=complex)
    for a, alpha in enumerate(comps):
        for b, beta in enumerate(comps):
            out[..., a, b] = solid_harmonic(p, alpha, beta, X)
    return out
