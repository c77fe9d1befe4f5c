"""How sharp can a z measurement be while the qubit still goes through a given channel?"""

# %%
import numpy as np

from pauli_compat import UnbiasedBinaryObservable, depolarizing, is_compatible, s_max
from pauli_compat.channels import luders_z, measure_and_prepare, phase_damping

# Depolarizing channels: the compatible region is a ball.  At p = 1/4 every
# observable fits, at p = 0 (no noise) only the trivial one.
for p in [0.0, 0.05, 0.1, 0.2, 0.25, 1 / 3]:
    print(f"depolarizing p={p:.3f}  s_max = {s_max(depolarizing(p), [0, 0, 1]):.6f}")

# %%
# Phase damping keeps x and y observables out entirely.
pd = phase_damping(0.8)
for label, n in [("x", [1, 0, 0]), ("y", [0, 1, 0]), ("z", [0, 0, 1])]:
    print(f"phase damping 0.8, direction {label}: s_max = {s_max(pd, n):.6f}")

# %%
# The Lüders channel of a noisy z measurement blocks every x observable.
for t in [0.1, 0.5, 0.9]:
    v = is_compatible(UnbiasedBinaryObservable(1e-6, [1, 0, 0]), luders_z(t))
    print(f"luders t={t}: tiny x observable compatible? {v.compatible}")

# %%
# Measure-and-prepare: verdicts along the perpendicular axis follow s^2 + t^2 <= 1.
for t in [0.0, 0.6, 0.8, 1.0]:
    print(f"measure-and-prepare t={t}: s_max along x = {s_max(measure_and_prepare(t), [1, 0, 0]):.6f}"
          f"  (sqrt(1 - t^2) = {np.sqrt(1 - t * t):.6f})")
