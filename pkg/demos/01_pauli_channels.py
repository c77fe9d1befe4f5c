"""Pauli channels, their Kraus operators and how they shrink the Bloch ball."""

# %%
import numpy as np

from pauli_compat import PauliChannel, depolarizing, kraus_min, phase_damping
from pauli_compat.linalg import PAULIS, SIGMA_0

# A Pauli channel is a probability vector over the four Pauli unitaries.
ch = PauliChannel([0.4, 0.3, 0.2, 0.1])
print("p =", ch.p)
print("Bloch scaling (t1, t2, t3) =", ch.bloch_scaling)

# %%
# Apply it to a state and read off the output Bloch vector.
r = np.array([0.3, -0.5, 0.6])
rho = 0.5 * (SIGMA_0 + sum(ri * s for ri, s in zip(r, PAULIS[1:])))
out = ch(rho)
print("in :", r)
print("out:", np.round([np.trace(out @ s).real for s in PAULIS[1:]], 6))

# %%
# Minimal Kraus operators drop the zero-weight Paulis.
for name, c in [("phase damping 0.8", phase_damping(0.8)), ("depolarizing 0.1", depolarizing(0.1))]:
    print(f"{name:>18}: {len(kraus_min(c))} Kraus operators, p = {np.round(c.p, 4)}")
