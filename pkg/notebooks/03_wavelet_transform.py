# %% [markdown]
# # Coherent states and reconstruction
#
# The constant function is the mother wavelet. Its orbit gives a tight frame,
# so a signal can be analyzed and resynthesized exactly.

# %%
import numpy as np

from cwlab import hilbert4d, verify, wavelet

rng = np.random.default_rng(2)
lam = 4
print(wavelet.admissibility_constant(lam), 4 / 3 * np.pi**10)

# %% [markdown]
# Frame matrix over the low-degree basis, normalized by the admissibility
# constant.

# %%
idx = hilbert4d.basis_indices(1)
F = wavelet.frame_matrix(lam, idx)
print(np.max(np.abs(F / wavelet.admissibility_constant(lam) - np.eye(len(idx)))))

# %% [markdown]
# Analysis followed by synthesis for a random degree-3 signal.

# %%
phi = hilbert4d.CoeffVector.random(lam, 3, rng)
Phi = wavelet.analyze(lam, phi)
Z = verify.interior_points(rng, 5)
print(np.abs(wavelet.synthesize(lam, Phi, Z) - phi(Z)))

# %% [markdown]
# Modulus and phase of the mother wavelet on the line `W = w I` for
# `lam = 1`.

# %%
table = wavelet.mother_slice(1, -1.0, 1.0, 0.25, 1.0, 5, 3)
for row in table:
    print(" ".join(f"{v: .4f}" for v in row))
