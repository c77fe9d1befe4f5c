"""
Naimark and Stinespring dilations and the maps built from them.

Ancilla basis vectors for a Pauli channel are labelled by the Pauli index
they carry.  Minimal dilations drop zero-probability labels and keep the
rest in ascending order; the full (possibly non-minimal) dilation keeps all
four, which makes ``Sigma_i`` the plain 4x4 matrices used by the
compatibility criterion.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import PAULIS, hermitian, hermitian_eig, partial_trace_first, partial_trace_second
from .observables import BinaryObservable, UnbiasedBinaryObservable

RANK_TOL = 1e-10


def _fix_phase(v):
    # first component with non-negligible modulus made real positive
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if idx.size:
        v = v * (abs(v[idx[0]]) / v[idx[0]])
    return v


@dataclass(frozen=True)
class NaimarkDilation:
    """Isometry ``T: C^2 -> C^dim_k`` and PVM with ``T^* pvm[x] T = A(x)``."""

    T: np.ndarray
    pvm: tuple
    spectral_vectors: tuple  # per outcome, columns phi_{x,k}

    @property
    def dim_k(self):
        return self.T.shape[0]

    @property
    def ranks(self):
        return tuple(v.shape[1] for v in self.spectral_vectors)


def naimark_dilate(obs):
    """Minimal Naimark dilation of a (qubit) binary observable.

    Each effect is written as ``A(x) = sum_k |phi_{x,k}><phi_{x,k}|`` with
    ``phi_{x,k} = sqrt(a_k) v_k`` over eigenvalues above ``RANK_TOL`` times
    the effect's largest eigenvalue.  Row ``(x, k)`` of ``T`` is
    ``phi_{x,k}^*``.
    """
    if isinstance(obs, UnbiasedBinaryObservable):
        obs = obs.effects()
    blocks = []
    for E in obs.effects:
        es = hermitian_eig(E)
        top = es.eigenvalues[0]
        keep = es.eigenvalues > RANK_TOL * top if top > 0 else np.zeros(len(es.eigenvalues), bool)
        cols = [_fix_phase(es.eigenvectors[:, k]) * math.sqrt(es.eigenvalues[k])
                for k in np.flatnonzero(keep)]
        blocks.append(np.column_stack(cols) if cols else np.zeros((obs.dim, 0), complex))
    T = np.vstack([B.conj().T for B in blocks])
    dim_k = T.shape[0]
    pvm = []
    offset = 0
    for B in blocks:
        P = np.zeros((dim_k, dim_k), dtype=complex)
        r = B.shape[1]
        P[offset:offset + r, offset:offset + r] = np.eye(r)
        offset += r
        pvm.append(P)
    return NaimarkDilation(T, tuple(pvm), tuple(blocks))


class MotherChannel:
    """``rho -> sum_x P_x T rho T^* P_x`` from a minimal Naimark dilation ``(T, P)``."""

    def __init__(self, dilation):
        self.dilation = dilation
        self.kraus = [P @ dilation.T for P in dilation.pvm]

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=complex)
        return sum(K @ rho @ K.conj().T for K in self.kraus)

    def explicit(self, rho):
        """Same map written as ``sum_x sum_{k,l} <phi_{x,k}|rho phi_{x,l}> |e_{x,k}><e_{x,l}|``."""
        rho = np.asarray(rho, dtype=complex)
        out = np.zeros((self.dilation.dim_k,) * 2, dtype=complex)
        offset = 0
        for B in self.dilation.spectral_vectors:
            r = B.shape[1]
            out[offset:offset + r, offset:offset + r] = B.conj().T @ rho @ B
            offset += r
        return out

    def choi(self):
        """``sum_ab |a><b| (x) Lambda(|a><b|)`` on ``C^2 (x) C^dim_k``."""
        vecs = [K.T.reshape(-1) for K in self.kraus]
        return sum(np.outer(v, v.conj()) for v in vecs)


def mother_channel(obs):
    return MotherChannel(naimark_dilate(obs))


@dataclass(frozen=True)
class StinespringDilation:
    """``V phi = sum_k M_k phi (x) e_k`` with ``M_k = sqrt(p_k) sigma_{labels[k]}``."""

    V: np.ndarray
    labels: tuple
    kraus: tuple

    @property
    def dim_k(self):
        return len(self.labels)


def stinespring_dilate(ch, minimal=True):
    """Stinespring isometry ``C^2 -> C^2 (x) C^dim_k`` of a Pauli channel.

    With ``minimal=True`` only the Pauli labels of non-zero weight get an
    ancilla vector; otherwise all four are kept.
    """
    labels = tuple(k for k in range(4) if ch.p[k] > 0 or not minimal)
    kraus = tuple(math.sqrt(ch.p[k]) * PAULIS[k] for k in labels)
    dim_k = len(labels)
    V = sum(np.kron(M, np.eye(dim_k)[:, [j]]) for j, M in enumerate(kraus))
    return StinespringDilation(V, labels, kraus)


def channel_apply(dil, rho):
    """``tr_K[V rho V^*]``; reproduces the channel."""
    return partial_trace_second(dil.V @ rho @ dil.V.conj().T, dil.dim_k)


def conjugate_apply(dil, rho):
    """Complementary channel ``rho -> tr_H[V rho V^*]`` on the ancilla."""
    rho = np.asarray(rho, dtype=complex)
    return partial_trace_first(dil.V @ rho @ dil.V.conj().T, dil.dim_k)


def sigma_operator(ch, i, minimal=False):
    """``Sigma_i``: image of ``sigma_i`` under the complementary channel, in closed form.

    Entry ``(k, l)`` equals ``sqrt(p_k p_l) tr(sigma_k sigma_i sigma_l)``.
    """
    r = np.sqrt(np.outer(ch.p, ch.p))
    S = np.zeros((4, 4), dtype=complex)
    if i == 0:
        S = np.diag(2 * ch.p).astype(complex)
    elif i == 1:
        S[0, 1] = S[1, 0] = 2 * r[0, 1]
        S[2, 3] = -2j * r[2, 3]
        S[3, 2] = 2j * r[2, 3]
    elif i == 2:
        S[0, 2] = S[2, 0] = 2 * r[0, 2]
        S[1, 3] = 2j * r[1, 3]
        S[3, 1] = -2j * r[1, 3]
    elif i == 3:
        S[0, 3] = S[3, 0] = 2 * r[0, 3]
        S[1, 2] = -2j * r[1, 2]
        S[2, 1] = 2j * r[1, 2]
    else:
        raise ValueError(f"Pauli index must be 0..3, got {i}")
    if minimal:
        keep = np.flatnonzero(ch.p > 0)
        S = S[np.ix_(keep, keep)]
    return S


def sigma_operators(ch, minimal=False):
    """``(Sigma_1, Sigma_2, Sigma_3)``."""
    return tuple(sigma_operator(ch, i, minimal) for i in (1, 2, 3))


def _dilation_for(ch, dim):
    full = stinespring_dilate(ch, minimal=False)
    if dim == 4:
        return full
    dil = stinespring_dilate(ch, minimal=True)
    if dil.dim_k != dim:
        raise ValueError(
            f"ancilla dimension {dim} matches neither the minimal ({dil.dim_k}) "
            "nor the full (4) dilation")
    return dil


def pullback(effect, ch):
    """``sum_{k,l} <e_k|E e_l> M_k^* M_l`` for an ancilla operator `E`."""
    E = np.asarray(effect, dtype=complex)
    dil = _dilation_for(ch, E.shape[0])
    M = dil.kraus
    return sum(E[k, l] * M[k].conj().T @ M[l]
               for k in range(len(M)) for l in range(len(M)))


def induced_observable(aprime, ch):
    """Qubit observable ``A(x) = sum_{k,l} <e_k|A'(x) e_l> M_k^* M_l``.

    `aprime` is a :class:`BinaryObservable` on the ancilla (dimension 4, or
    the minimal dilation dimension), or just its plus effect.
    """
    if not isinstance(aprime, BinaryObservable):
        aprime = BinaryObservable(aprime)
    return BinaryObservable(*(hermitian(pullback(E, ch), tol=1e-10) for E in aprime.effects))


def induced_bloch(aprime_plus, ch):
    """``(tr[A' Sigma_0], ..., tr[A' Sigma_3]) / 2``: Pauli coefficients of the pulled-back effect."""
    E = np.asarray(aprime_plus, dtype=complex)
    minimal = E.shape[0] != 4
    return np.array([np.trace(E @ sigma_operator(ch, i, minimal)).real / 2
                     for i in range(4)])


__all__ = [
    "NaimarkDilation", "naimark_dilate", "MotherChannel", "mother_channel",
    "StinespringDilation", "stinespring_dilate", "channel_apply",
    "conjugate_apply", "sigma_operator", "sigma_operators", "pullback",
    "induced_observable", "induced_bloch",
]
