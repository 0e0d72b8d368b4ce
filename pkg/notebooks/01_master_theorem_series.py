# %% [markdown]
# # Determinant power series
#
# Truncated character sums against `det(I - X)^-lam`, first for 2x2
# matrices and then for 3x3, where the truncation error becomes visible.

# %%
import numpy as np

from cwlab import master, verify

rng = np.random.default_rng(0)

# %% [markdown]
# Products `Zt^dag Z` of shrunken domain points make safe test matrices.

# %%
X = verify.convergent_2x2(rng, 5)
exact = np.linalg.det(np.eye(2) - X) ** -3
series = master.extended_smt_lhs_n2(X, lam=3, degree_max=40)
print(np.abs(series - exact) / np.abs(exact))

# %% [markdown]
# The residual against the truncation degree, for one 3x3 matrix at spectral
# radius 0.4.

# %%
X3 = verify.matrices_with_radius(rng, 1, 3, 0.4)
for lam in (2, 3, 4):
    exact = np.linalg.det(np.eye(3) - X3) ** -lam
    for deg in (6, 12, 18):
        approx = master.msmt_lhs(X3, lam=lam, degree_max=deg)
        print(lam, deg, float(np.max(np.abs(approx - exact) / np.abs(exact))))

# %% [markdown]
# Coefficients are exact rationals. They are usually integers, but not always.

# %%
for s2 in range(4):
    print(s2, [master.msmt_coefficient(2, 4, p, (s2,)) for p in range(5)])
print(master.msmt_coefficient(3, 4, 0, (0, 2)))
