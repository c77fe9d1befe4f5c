"""
Small dense complex linear algebra for qubit and two-qubit sized operators.

Operators are plain ``numpy`` arrays of ``complex128``.  Validation happens
in :func:`hermitian`, which every public entry point uses to reject bad
input early.
"""

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
DEFAULT_TOL = 1e-10

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)


def hermitian(H, tol=HERMITIAN_TOL):
    """Return `H` as a complex square array, raising if it is not Hermitian.

    Parameters
    ----------
    H : array_like
        Square matrix.
    tol : float
        Largest tolerated entry of ``H - H^dagger``.

    Returns
    -------
    ndarray
        A complex copy of `H`, exactly Hermitized.
    """
    H = np.array(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    err = np.max(np.abs(H - H.conj().T)) if H.size else 0.0
    if err > tol:
        raise ValueError(f"matrix is not Hermitian (max deviation {err:.3g})")
    return 0.5 * (H + H.conj().T)


def pauli_expand(H):
    """Real coefficients ``c`` with ``H = sum_j c[j] sigma_j`` for a 2x2 Hermitian `H`."""
    H = hermitian(H)
    if H.shape != (2, 2):
        raise ValueError("pauli_expand needs a 2x2 operator")
    return np.array([np.trace(H @ s).real / 2 for s in PAULIS])


def pauli_reconstruct(c):
    """Inverse of :func:`pauli_expand`."""
    c = np.asarray(c, dtype=float)
    return sum(cj * s for cj, s in zip(c, PAULIS))


def bloch_operator(v):
    """``v . sigma`` for a real 3-vector `v`."""
    v = np.asarray(v, dtype=float)
    return v[0] * SIGMA_1 + v[1] * SIGMA_2 + v[2] * SIGMA_3


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues in descending order and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def _jacobi_sweep_pair(A, V, p, q):
    apq = A[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    # Rotate the phase of A[p, q] to the real axis, then apply a real
    # Givens rotation that annihilates it.
    phase = apq / r
    app = A[p, p].real
    aqq = A[q, q].real
    theta = (aqq - app) / (2.0 * r)
    if theta == 0.0:
        t = 1.0
    elif abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    J = np.eye(A.shape[0], dtype=complex)
    J[p, p] = c
    J[q, q] = c
    J[p, q] = s * phase
    J[q, p] = -s * np.conj(phase)
    A[:] = J.conj().T @ A @ J
    A[p, q] = A[q, p] = 0.0
    V[:] = V @ J


def hermitian_eig(H, tol=1e-15, max_sweeps=64):
    """Eigendecomposition of a small Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    H : array_like
        Hermitian matrix (validated by :func:`hermitian`).
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm falls below
        ``tol * ||H||_F``.
    max_sweeps : int
        Hard cap on the number of full sweeps.

    Returns
    -------
    EigenSystem
        Eigenvalues sorted in descending order.
    """
    A = hermitian(H)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(A), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_sweep_pair(A, V, p, q)
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.diag(A).real
    order = np.argsort(-w, kind="stable")
    return EigenSystem(w[order], V[:, order])


def is_psd(H, tol=DEFAULT_TOL):
    """True iff the smallest eigenvalue of `H` is at least ``-tol``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return bool(hermitian_eig(H).eigenvalues[-1] >= -tol)


def _split_dims(X, dim_k):
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] != 2 * dim_k:
        raise ValueError(
            f"operator of shape {X.shape} does not act on C^2 (x) C^{dim_k}")
    return X.reshape(2, dim_k, 2, dim_k)


def partial_trace_second(X, dim_k):
    """Trace out the second factor of an operator on ``C^2 (x) C^dim_k``."""
    return np.einsum("ikjk->ij", _split_dims(X, dim_k))


def partial_trace_first(X, dim_k):
    """Trace out the qubit factor of an operator on ``C^2 (x) C^dim_k``."""
    return np.einsum("kikj->ij", _split_dims(X, dim_k))
