import numpy as np
import pytest

from pauli_compat.channels import PauliChannel, phase_damping
from pauli_compat.dilations import (channel_apply, conjugate_apply, induced_bloch,
                                    induced_observable, mother_channel, naimark_dilate,
                                    pullback, sigma_operator, sigma_operators,
                                    stinespring_dilate)
from pauli_compat.linalg import PAULIS, SIGMA_0
from pauli_compat.observables import BinaryObservable, UnbiasedBinaryObservable

CHANNELS = [[0.4, 0.3, 0.2, 0.1], [0.5, 0, 0, 0.5], [1, 0, 0, 0], [0, 1 / 3, 1 / 3, 1 / 3]]


def random_state(rng):
    G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = G @ G.conj().T
    return rho / np.trace(rho)


@pytest.mark.parametrize("s", [0.0, 0.4, 1.0])
def test_naimark_dilation(s):
    obs = UnbiasedBinaryObservable(s, [0.6, 0, 0.8])
    dil = naimark_dilate(obs)
    assert np.allclose(dil.T.conj().T @ dil.T, SIGMA_0)
    for P, E in zip(dil.pvm, obs.effects().effects):
        assert np.allclose(dil.T.conj().T @ P @ dil.T, E)
    assert dil.dim_k == sum(dil.ranks)
    assert dil.ranks == ((1, 1) if s == 1 else (2, 2))


def test_mother_channel_forms_agree():
    lam = mother_channel(UnbiasedBinaryObservable(0.7, [1, 0, 0]))
    rho = random_state(np.random.default_rng(2))
    assert np.allclose(lam(rho), lam.explicit(rho))
    assert np.isclose(np.trace(lam(rho)), 1)
    assert np.min(np.linalg.eigvalsh(lam.choi())) > -1e-12


@pytest.mark.parametrize("p", CHANNELS)
@pytest.mark.parametrize("minimal", [True, False])
def test_stinespring_reproduces_channel(p, minimal):
    ch = PauliChannel(p)
    dil = stinespring_dilate(ch, minimal)
    assert np.allclose(dil.V.conj().T @ dil.V, SIGMA_0)
    rho = random_state(np.random.default_rng(0))
    assert np.allclose(channel_apply(dil, rho), ch(rho))
    assert dil.dim_k == (int(np.count_nonzero(ch.p)) if minimal else 4)


@pytest.mark.parametrize("p", CHANNELS)
def test_sigma_closed_form_matches_conjugate_channel(p):
    ch = PauliChannel(p)
    for minimal in (True, False):
        dil = stinespring_dilate(ch, minimal)
        for i in range(4):
            expected = conjugate_apply(dil, PAULIS[i])
            assert np.allclose(sigma_operator(ch, i, minimal), expected, atol=1e-14)


def test_sigma_trace_formula():
    ch = PauliChannel([0.4, 0.3, 0.2, 0.1])
    for i, S in enumerate(sigma_operators(ch), start=1):
        for k in range(4):
            for l in range(4):
                ref = np.sqrt(ch.p[k] * ch.p[l]) * np.trace(PAULIS[k] @ PAULIS[i] @ PAULIS[l])
                assert np.isclose(S[k, l], ref)


def test_sigma_index_range():
    with pytest.raises(ValueError):
        sigma_operator(PauliChannel([1, 0, 0, 0]), 4)


@pytest.mark.parametrize("p", CHANNELS)
def test_pullback_and_induced_bloch(p):
    ch = PauliChannel(p)
    rng = np.random.default_rng(5)
    G = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    E = G @ G.conj().T
    E /= 1.01 * np.max(np.linalg.eigvalsh(E))
    A = pullback(E, ch)
    coeffs = [np.trace(A @ s).real / 2 for s in PAULIS]
    assert np.allclose(induced_bloch(E, ch), coeffs)
    obs = induced_observable(E, ch)
    assert isinstance(obs, BinaryObservable)
    assert np.allclose(sum(obs.effects), SIGMA_0)


def test_minimal_ancilla_dimension():
    ch = phase_damping(0.3)
    assert np.allclose(pullback(np.eye(2), ch), SIGMA_0)
    with pytest.raises(ValueError):
        pullback(np.eye(3), ch)
