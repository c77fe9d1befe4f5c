"""Unital qubit channels reduce to Pauli channels up to rotations of input and output."""

# %%
import numpy as np
from scipy.spatial.transform import Rotation

from pauli_compat import UnbiasedBinaryObservable, unital_decompose, unital_is_compatible
from pauli_compat.compatibility import unital_s_max

R_out, R_in = Rotation.random(2, random_state=3).as_matrix()
T = R_out @ np.diag([0.5, 0.3, -0.1]) @ R_in.T

dec = unital_decompose(T)
print("Pauli weights:", np.round(dec.p, 6))
print("reconstruction error:", np.max(np.abs(dec.bloch_matrix() - T)))

# %%
# Only the input rotation matters for compatibility.
for n in np.eye(3):
    print(f"n={n}: s_max = {unital_s_max(dec, n):.6f}")

obs = UnbiasedBinaryObservable(0.5, [0, 0, 1])
print("A_{0.5,z} compatible:", unital_is_compatible(obs, dec).compatible)
