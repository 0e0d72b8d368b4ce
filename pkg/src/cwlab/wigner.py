"""Wigner D-matrices of arbitrary complex 2x2 arguments.

Half-integer labels are passed doubled: ``j2 = 2j``, ``q1_2 = 2 q1``,
``q2_2 = 2 q2``. Rows and columns of a block run over ``q = j, j-1, ..., -j``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

import numpy as np

from .matrices import as_matrix


def check_labels(j2: int, q1_2: int, q2_2: int) -> None:
    if j2 < 0:
        raise ValueError(f"2j must be nonnegative, got {j2}")
    for q in (q1_2, q2_2):
        if abs(q) > j2 or (j2 - q) % 2:
            raise ValueError(f"index 2q={q} not valid for 2j={j2}")


@lru_cache(maxsize=None)
def _terms(j2: int, q1_2: int, q2_2: int):
    """Exact data of the finite sum: prefactor and (coef, exponents) per k."""
    jq1p = (j2 + q1_2) // 2
    jq1m = (j2 - q1_2) // 2
    jq2p = (j2 + q2_2) // 2
    jq2m = (j2 - q2_2) // 2
    s = (q1_2 + q2_2) // 2
    num = factorial(jq1p) * factorial(jq1m)
    den = factorial(jq2p) * factorial(jq2m)
    pref = np.sqrt(num / den)
    out = []
    for k in range(max(0, s), min(jq1p, jq2p) + 1):
        c = comb(jq2p, k) * comb(jq2m, k - s)
        out.append((c, k, jq1p - k, jq2p - k, k - s))
    return pref, tuple(out)


def wigner_d(j2: int, q1_2: int, q2_2: int, X):
    """Wigner function ``D^j_{q1 q2}(X)``, homogeneous of degree 2j in ``X``.

    Parameters
    ----------
    j2, q1_2, q2_2 : int
        Doubled labels ``2j``, ``2 q1``, ``2 q2``.
    X : array_like, shape (..., 2, 2)
        Any complex 2x2 matrix or batch.

    Returns
    -------
    complex or ndarray
        One value per matrix in the batch.
    """
    check_labels(j2, q1_2, q2_2)
    X = as_matrix(X, 2)
    pref, terms = _terms(j2, q1_2, q2_2)
    x11, x12, x21, x22 = X[..., 0, 0], X[..., 0, 1], X[..., 1, 0], X[..., 1, 1]
    acc = np.zeros(X.shape[:-2], dtype=complex)
    for c, a, b, cc, d in terms:
        acc = acc + float(c) * x11**a * x12**b * x21**cc * x22**d
    return pref * acc


def wigner_block(j2: int, X):
    """The ``(2j+1) x (2j+1)`` matrix of all ``D^j_{q1 q2}(X)``, q descending."""
    X = as_matrix(X, 2)
    n = j2 + 1
    out = np.empty(X.shape[:-2] + (n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            out[..., a, b] = wigner_d(j2, j2 - 2 * a, j2 - 2 * b, X)
    return out


def wigner_character(j2: int, X):
    """Trace ``sum_q D^j_{qq}(X)``."""
    X = as_matrix(X, 2)
    acc = np.zeros(X.shape[:-2], dtype=complex)
    for q in range(-j2, j2 + 1, 2):
        acc = acc + wigner_d(j2, q, q, X)
    return acc


def labels(j2: int):
    """All ``(q1_2, q2_2)`` pairs for a given ``2j``, in block order."""
    qs = range(j2, -j2 - 1, -2)
    return [(a, b) for a in qs for b in qs]
