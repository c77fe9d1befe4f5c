"""
Pauli channels, the standard one-parameter families, general Kraus maps and
the normal form ``Phi(rho) = U Psi_p(V^* rho V) U^*`` of unital qubit channels.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .linalg import PAULIS, SIGMA_0, hermitian_eig

CLAMP_TOL = 1e-12

# t_j = p0 + p_j - p_k - p_l, rows indexed by (t0 = 1, t1, t2, t3)
_T_FROM_P = np.array([
    [1, 1, 1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
], dtype=float)


class PauliChannel:
    """``Psi_p(rho) = sum_j p_j sigma_j rho sigma_j`` for a probability 4-vector `p`.

    Components in ``[-1e-12, 0)`` are clamped to zero; anything more
    negative, or a vector whose sum is off by more than ``1e-12``, raises
    ``ValueError``.
    """

    __slots__ = ("p",)

    def __init__(self, p):
        p = np.array(p, dtype=float).reshape(-1)
        if p.shape != (4,) or not np.all(np.isfinite(p)):
            raise ValueError(f"Pauli channel needs a finite 4-vector, got {p!r}")
        if np.any(p < -CLAMP_TOL):
            raise ValueError(f"negative probability in {p.tolist()}")
        if abs(p.sum() - 1.0) > CLAMP_TOL:
            raise ValueError(f"probabilities sum to {p.sum():.15g}, not 1")
        p[p < 0] = 0.0
        p.setflags(write=False)
        self.p = p

    def __repr__(self):
        return f"PauliChannel({self.p.tolist()})"

    def __eq__(self, other):
        return isinstance(other, PauliChannel) and bool(np.array_equal(self.p, other.p))

    def __hash__(self):
        return hash(tuple(self.p))

    @property
    def bloch_scaling(self):
        """Factors ``(t1, t2, t3)`` multiplying the Bloch vector components."""
        return (_T_FROM_P @ self.p)[1:]

    def __call__(self, rho):
        return apply(self, rho)

    def to_json(self):
        return {"p": [float(x) for x in self.p]}


def apply(ch, rho):
    """Image of the 2x2 operator `rho` under the Pauli channel `ch`."""
    rho = np.asarray(rho, dtype=complex)
    return sum(pj * s @ rho @ s for pj, s in zip(ch.p, PAULIS))


def kraus_min(ch):
    """Minimal Kraus operators ``sqrt(p_k) sigma_k`` (zero-weight terms dropped)."""
    return [math.sqrt(pk) * PAULIS[k] for k, pk in enumerate(ch.p) if pk > 0]


def permuted_channels(ch):
    """The three Pauli channels reached by post-composing with a Pauli unitary."""
    p0, p1, p2, p3 = ch.p
    return (
        PauliChannel([p1, p0, p3, p2]),
        PauliChannel([p2, p3, p0, p1]),
        PauliChannel([p3, p2, p1, p0]),
    )


def pauli_from_scaling(t):
    """Probability vector solving ``t_j = p0 + p_j - p_k - p_l``.

    No positivity check; callers decide how to treat negative entries.
    """
    t = np.asarray(t, dtype=float)
    return _T_FROM_P @ np.concatenate([[1.0], t]) / 4.0


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise ValueError(f"{name} must lie in [{lo:.12g}, {hi:.12g}], got {value}")


def depolarizing(p):
    """``(1-3p, p, p, p)``, i.e. ``rho -> (1-4p) rho + 2p 1``.

    Completely positive for ``p`` in ``[0, 1/3]``.  Only ``[0, 1/4]`` reads as
    a mixture of the identity with total depolarization; ``p = 1/3`` is the
    universal NOT.
    """
    _check_range("depolarizing parameter", p, 0.0, 1.0 / 3.0)
    return PauliChannel([1 - 3 * p, p, p, p])


def phase_damping(p):
    """``(p, 0, 0, 1-p)``: off-diagonals in the sigma_3 basis scale by ``2p - 1``."""
    _check_range("phase damping parameter", p, 0.0, 1.0)
    return PauliChannel([p, 0.0, 0.0, 1.0 - p])


def measure_and_prepare(t):
    """Measure the z observable of sharpness `t`, prepare the matching sigma_3 eigenstate."""
    _check_range("sharpness", t, 0.0, 1.0)
    return PauliChannel([(1 + t) / 4, (1 - t) / 4, (1 - t) / 4, (1 + t) / 4])


def luders_z(t):
    """Lüders channel of the z observable with sharpness `t`."""
    _check_range("sharpness", t, 0.0, 1.0)
    p = 0.5 * (math.sqrt(1.0 - t * t) + 1.0)
    return phase_damping(p)


FAMILIES = {
    "depolarizing": depolarizing,
    "phase_damping": phase_damping,
    "measure_and_prepare": measure_and_prepare,
    "luders_z": luders_z,
}


def family(name, param):
    key = name.replace("-", "_")
    if key not in FAMILIES:
        raise ValueError(f"unknown channel family {name!r}; known: {sorted(FAMILIES)}")
    return FAMILIES[key](float(param))


class QubitChannelMap:
    """A qubit channel given by Kraus operators."""

    def __init__(self, kraus, tol=1e-10):
        ops = [np.array(K, dtype=complex) for K in kraus]
        if not ops or any(K.shape != (2, 2) for K in ops):
            raise ValueError("need a non-empty list of 2x2 Kraus operators")
        completeness = sum(K.conj().T @ K for K in ops)
        if np.max(np.abs(completeness - SIGMA_0)) > tol:
            raise ValueError("Kraus operators are not trace preserving")
        self.kraus = ops

    @classmethod
    def from_pauli(cls, ch):
        return cls(kraus_min(ch))

    @classmethod
    def unitary(cls, U):
        return cls([U])

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=complex)
        return sum(K @ rho @ K.conj().T for K in self.kraus)

    def pauli_transfer(self):
        """Real 4x4 matrix ``R[i, j] = tr(sigma_i Phi(sigma_j)) / 2``."""
        return np.array([[np.trace(si @ self(sj)).real / 2 for sj in PAULIS]
                         for si in PAULIS])

    def bloch_matrix(self):
        R = self.pauli_transfer()
        if np.max(np.abs(R[1:, 0])) > 1e-10:
            raise ValueError("channel is not unital")
        return R[1:, 1:]

    def choi(self):
        return choi_from_kraus(self.kraus)


def compose(outer, inner):
    """Kraus representation of ``outer o inner``."""
    return QubitChannelMap([A @ B for A in outer.kraus for B in inner.kraus])


def mix(channels, weights):
    """Convex combination ``sum_i w_i Phi_i``."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(channels),) or np.any(w < 0) or abs(w.sum() - 1) > 1e-12:
        raise ValueError("weights must be a probability vector matching the channels")
    return QubitChannelMap([math.sqrt(wi) * K
                            for wi, ch in zip(w, channels) if wi > 0
                            for K in ch.kraus])


def choi_from_kraus(kraus):
    """``sum_ab |a><b| (x) Phi(|a><b|)``."""
    d = kraus[0].shape[1]
    J = np.zeros((d * d, d * d), dtype=complex)
    for K in kraus:
        v = K.T.reshape(-1)  # vec with the input index first
        J += np.outer(v, v.conj())
    return J


def choi_from_bloch(T):
    """Choi operator of the unital qubit map with Bloch action `T`."""
    T = np.asarray(T, dtype=float)
    R = np.eye(4)
    R[1:, 1:] = T

    def phi(X):
        c = np.array([np.trace(X @ s) / 2 for s in PAULIS])
        return sum((R[i] @ c) * PAULIS[i] for i in range(4))

    J = np.zeros((4, 4), dtype=complex)
    for a in range(2):
        for b in range(2):
            E = np.zeros((2, 2), dtype=complex)
            E[a, b] = 1.0
            J[2 * a:2 * a + 2, 2 * b:2 * b + 2] = phi(E)
    return J


def rotation_to_unitary(R):
    """SU(2) element ``U`` with ``U (a.sigma) U^* = (R a).sigma``."""
    x, y, z, w = Rotation.from_matrix(R).as_quat()
    return w * SIGMA_0 - 1j * (x * PAULIS[1] + y * PAULIS[2] + z * PAULIS[3])


@dataclass(frozen=True)
class UnitalDecomposition:
    """``Phi(rho) = U Psi_p(V^* rho V) U^*``."""

    U: np.ndarray
    channel: PauliChannel
    V: np.ndarray

    @property
    def p(self):
        return self.channel.p

    def as_map(self):
        inner = QubitChannelMap.unitary(self.V.conj().T)
        return compose(QubitChannelMap.unitary(self.U),
                       compose(QubitChannelMap.from_pauli(self.channel), inner))

    def bloch_matrix(self):
        return self.as_map().bloch_matrix()

    def to_pauli_frame(self, n):
        """Direction ``R_V^T n`` seen by the Pauli part, where ``V (a.sigma) V^* = (R_V a).sigma``."""
        R = np.array([[np.trace(si @ self.V @ sj @ self.V.conj().T).real / 2
                       for sj in PAULIS[1:]] for si in PAULIS[1:]])
        return R.T @ np.asarray(n, dtype=float)


def unital_decompose(bloch_matrix, psd_tol=1e-9):
    """Write a unital qubit channel as rotated Pauli channel.

    Uses a determinant-corrected singular value decomposition
    ``T = R_U diag(t) R_V^T`` with proper rotations ``R_U, R_V``.  When
    singular values coincide the factors are not unique, and this returns
    one valid decomposition.

    Parameters
    ----------
    bloch_matrix : array_like
        Real 3x3 matrix acting on Bloch vectors.
    psd_tol : float
        Tolerance for the complete-positivity check on the Choi operator.

    Returns
    -------
    UnitalDecomposition
    """
    T = np.asarray(bloch_matrix)
    if T.shape != (3, 3) or np.iscomplexobj(T) or not np.all(np.isfinite(T)):
        raise ValueError("a unital qubit channel needs a finite real 3x3 Bloch matrix")
    T = T.astype(float)
    if hermitian_eig(choi_from_bloch(T)).eigenvalues[-1] < -psd_tol:
        raise ValueError("Bloch matrix is not completely positive")

    W, sv, Xt = np.linalg.svd(T)
    X = Xt.T
    t = sv.copy()
    if np.linalg.det(W) < 0:
        W[:, -1] *= -1
        t[-1] *= -1
    if np.linalg.det(X) < 0:
        X[:, -1] *= -1
        t[-1] *= -1

    p = pauli_from_scaling(t)
    if np.any(p < -2 * psd_tol):
        raise ValueError("Bloch matrix is not realizable as a unital qubit channel")
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    return UnitalDecomposition(rotation_to_unitary(W), PauliChannel(p),
                               rotation_to_unitary(X))
