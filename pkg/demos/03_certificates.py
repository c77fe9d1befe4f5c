"""Optimal ancilla effects, dual certificates and a randomized search as cross-checks."""

# %%
import numpy as np

from pauli_compat import (PauliChannel, certificate_check, dual_certificate,
                          instrument_consistency, optimal_primal, primal_search, s_max)

ch = PauliChannel([0.4, 0.3, 0.2, 0.1])
n = np.array([0.6, 0.0, 0.8])
print("closed-form s_max:", s_max(ch, n))

# %%
# The optimal effect on the ancilla is a rank-2 projection.
prim = optimal_primal(ch, n)
print("n' =", np.round(prim.n_prime, 6))
print("eigenvalues of A'(+):", np.round(np.linalg.eigvalsh(prim.a_prime_plus), 12))

# %%
# The dual certificate bounds every compatible sharpness from above.
cert = dual_certificate(ch, n)
feasible, upper = certificate_check(cert, ch, n)
print(f"certificate feasible: {feasible}, upper bound {upper:.12f}")

# %%
# The instrument built from A' reproduces both the channel and the observable.
check = instrument_consistency(prim.a_prime_plus, ch, trials=50, seed=1)
print(f"max channel error {check.max_channel_error:.2e}, "
      f"max probability error {check.max_probability_error:.2e}")

# %%
# A blind randomized search over ancilla effects lands just below the optimum.
report = primal_search(ch, n, iterations=10_000, seed=0)
print(f"search best {report.best_s:.6f}  gap {upper - report.best_s:.2e}")
