"""Master-theorem series, SU(2,2) geometry and conformal wavelets on the Cartan domain D4."""

from . import disk1d, group, hilbert4d, master, matrices, solidharm, verify, wavelet, wigner

__version__ = "0.1.0"

__all__ = [
    "disk1d",
    "group",
    "hilbert4d",
    "master",
    "matrices",
    "solidharm",
    "verify",
    "wavelet",
    "wigner",
]
