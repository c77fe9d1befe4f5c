"""Compatible regions: the ellipsoid of Bloch vectors and the slice of the channel simplex."""

# %%
import numpy as np

from pauli_compat import PauliChannel, UnbiasedBinaryObservable, ellipsoid_sample
from pauli_compat.compatibility import ellipsoid_lhs, simplex_region_sample
from pauli_compat.formats import ellipsoid_csv

# Generic channels give an ellipsoid with semi-axes p_plus.
for p in [[0.4, 0.3, 0.2, 0.1], [0.5, 0.0, 0.0, 0.5], [1.0, 0.0, 0.0, 0.0]]:
    ch = PauliChannel(p)
    sample = ellipsoid_sample(ch, 400)
    extent = np.abs(sample.points).max(axis=0)
    print(f"p={p}: {sample.geometry:9s} extent {np.round(extent, 4)}")

# %%
ch = PauliChannel([0.4, 0.3, 0.2, 0.1])
pts = ellipsoid_sample(ch, 400).points
resid = max(abs(ellipsoid_lhs(ch, b) - 1) for b in pts)
print("largest boundary residual:", resid)
print(ellipsoid_csv(pts[:3]))

# %%
# Which Pauli channels admit a sharp-ish z measurement?  Sharper observables fit fewer channels.
for s in [0.3, 0.6, 0.9, 1.0]:
    _, flags = simplex_region_sample(UnbiasedBinaryObservable(s, [0, 0, 1]), 21)
    print(f"s={s}: {flags.mean():.3f} of the simplex grid is compatible")
