# %% [markdown]
# # Group elements, the Cartan domain and the tube
#
# Sampling group elements, moving points around and checking that the
# Cayley map carries one picture onto the other.

# %%
import numpy as np

from cwlab import group, hilbert4d, matrices

rng = np.random.default_rng(1)

# %%
u = group.random_lie_params(rng)
f = group.exp_element(u)
g = group.upsilon(f)
Z = 0.6 * hilbert4d.sample_cartan(rng, 4)
W = group.act_cartan(g, Z)
print(matrices.in_cartan(W))

# %% [markdown]
# The Cayley map carries the tube action of `f.inverse()` to the domain action
# of `g = upsilon(f)`.

# %%
Wt = group.cayley_inv(Z[0])
lhs = group.cayley(group.act_tube(f.inverse(), Wt))
rhs = group.act_cartan(g, Z[0])
print(np.max(np.abs(lhs - rhs)))

# %% [markdown]
# Reproducing kernel along the diagonal line `Z = x I`.

# %%
for x in (0.0, 0.3, 0.6, 0.9):
    Zx = x * np.eye(2, dtype=complex)
    print(x, complex(hilbert4d.bergman_kernel(4, Zx, Zx)).real)
