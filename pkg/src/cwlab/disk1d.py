"""One-dimensional model: affine wavelets on the half-plane and the unit disk.

Weighted Bergman spaces with parameter ``lam >= 1``:

* disk, ``dnu = (2 lam - 1)/pi (1 - |z|^2)^(2 lam - 2) |dz|``;
* upper half-plane, ``dnu~ = (2 lam - 1)/(4 pi) Im(w)^(2 lam - 2) |dw|``.

They are related by the Cayley map ``z = (1 + iw)/(1 - iw)`` and the
isometry ``phi~(w) = 2^(2 lam) (1 - iw)^(-2 lam) phi(z(w))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np


def _check_lam(lam):
    if lam < 1:
        raise ValueError("lambda must be >= 1")


def _check_disk(z):
    if np.any(np.abs(z) >= 1):
        raise ValueError("point outside the unit disk")


def _check_halfplane(w):
    if np.any(np.imag(w) <= 0):
        raise ValueError("point outside the upper half-plane")


def disk_basis(lam: int, n: int, z):
    """Orthonormal monomial ``C(2 lam + n - 1, n)^(1/2) z^n``."""
    _check_lam(lam)
    z = np.asarray(z, dtype=complex)
    _check_disk(z)
    return np.sqrt(float(comb(2 * lam + n - 1, n))) * z**n


def disk_kernel(lam: int, z, zp):
    """Bergman kernel ``(1 - conj(z) z')^(-2 lam)``."""
    z, zp = np.asarray(z, dtype=complex), np.asarray(zp, dtype=complex)
    _check_disk(z)
    _check_disk(zp)
    return (1 - np.conj(z) * zp) ** (-2 * lam)


def disk_kernel_series(lam: int, z, zp, trunc: int = 60):
    """``sum_{n <= trunc} conj(phi_n(z)) phi_n(z')``."""
    return sum(np.conj(disk_basis(lam, n, z)) * disk_basis(lam, n, zp) for n in range(trunc + 1))


def halfplane_kernel(lam: int, w, wp):
    """Half-plane kernel ``((i/2)(conj(w) - w'))^(-2 lam)``."""
    w, wp = np.asarray(w, dtype=complex), np.asarray(wp, dtype=complex)
    _check_halfplane(w)
    _check_halfplane(wp)
    return (0.5j * (np.conj(w) - wp)) ** (-2 * lam)


def cayley1(w):
    """``z = (1 + iw)/(1 - iw)``."""
    w = np.asarray(w, dtype=complex)
    if np.any(w == -1j):
        raise ValueError("pole at w = -i")
    return (1 + 1j * w) / (1 - 1j * w)


def cayley1_inv(z):
    """``w = i (1 - z)/(1 + z)``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == -1):
        raise ValueError("pole at z = -1")
    return 1j * (1 - z) / (1 + z)


def disk_isometry(lam: int, phi):
    """Map a disk function to ``w -> 2^(2 lam) (1 - iw)^(-2 lam) phi(z(w))``."""
    _check_lam(lam)

    def phit(w):
        w = np.asarray(w, dtype=complex)
        return 2.0 ** (2 * lam) * (1 - 1j * w) ** (-2 * lam) * phi(cayley1(w))

    return phit


def halfplane_basis(lam: int, n: int, w):
    """Image of :func:`disk_basis` under :func:`disk_isometry`."""
    return disk_isometry(lam, lambda z: disk_basis(lam, n, z))(w)


@dataclass(frozen=True)
class AffineElement:
    """Affine map ``x -> a x + b`` with ``a > 0``."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("dilation a must be positive")

    def __matmul__(self, other):
        # (a', b') o (a, b) = (a' a, b' + a' b)
        return AffineElement(self.a * other.a, self.b + self.a * other.b)


def affine_rep(lam, a, b, phi):
    """``x -> a^(-lam) phi((x - b)/a)``; works on the real line or the half-plane."""
    if not a > 0:
        raise ValueError("dilation a must be positive")

    def out(x):
        return a ** (-lam) * phi((np.asarray(x) - b) / a)

    return out


# quadrature

def disk_inner(lam: int, f, g, n_radial: int = 64, n_angular: int = 64):
    """``<f|g>`` on the disk: Gauss-Legendre in ``u = r^2``, trapezoid in angle.

    Exact for polynomials of degree below ``n_angular`` when
    ``2 n_radial`` exceeds the radial polynomial degree.
    """
    _check_lam(lam)
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    u = (x + 1) / 2
    wu = wx / 2
    th = 2 * np.pi * np.arange(n_angular) / n_angular
    z = np.sqrt(u)[:, None] * np.exp(1j * th)[None, :]
    # r dr dtheta = du dtheta / 2
    wt = (2 * lam - 1) / np.pi * (1 - u) ** (2 * lam - 2) * wu / 2 * (2 * np.pi / n_angular)
    return np.sum(wt[:, None] * np.conj(f(z)) * g(z))


def halfplane_inner(lam: int, f, g, n: int = 200):
    """``<f|g>`` on the half-plane with ``y = tan b``, ``x = (1 + y) tan a``.

    The substitution keeps the algebraic decay ``|1 - iw|^(-4 lam)`` of the
    basis functions smooth on a bounded rectangle; both angles use
    Gauss-Legendre.
    """
    _check_lam(lam)
    t, wt = np.polynomial.legendre.leggauss(n)
    al = t * np.pi / 2
    wa = wt * np.pi / 2
    be = (t + 1) * np.pi / 4
    wb = wt * np.pi / 4
    y = np.tan(be)
    x = (1 + y)[:, None] * np.tan(al)[None, :]
    w = x + 1j * y[:, None]
    jac = ((1 + y) / np.cos(be) ** 2)[:, None] / np.cos(al)[None, :] ** 2
    dens = (2 * lam - 1) / (4 * np.pi) * y[:, None] ** (2 * lam - 2)
    return np.sum(wb[:, None] * wa[None, :] * jac * dens * np.conj(f(w)) * g(w))
