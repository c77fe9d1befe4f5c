import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from pauli_compat.channels import (PauliChannel, QubitChannelMap, choi_from_bloch,
                                   choi_from_kraus, compose, depolarizing, family, kraus_min,
                                   luders_z, measure_and_prepare, mix, pauli_from_scaling,
                                   permuted_channels, phase_damping, rotation_to_unitary,
                                   unital_decompose)
from pauli_compat.linalg import PAULIS, SIGMA_0


def random_state(rng):
    G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = G @ G.conj().T
    return rho / np.trace(rho)


@pytest.mark.parametrize("p", [[1.0, 0, 0, 0], [0.4, 0.3, 0.2, 0.1], [0, 1 / 3, 1 / 3, 1 / 3]])
def test_pauli_channel_action_on_bloch_vector(p):
    ch = PauliChannel(p)
    r = np.array([0.3, -0.5, 0.4])
    rho = 0.5 * (SIGMA_0 + sum(ri * si for ri, si in zip(r, PAULIS[1:])))
    out = ch(rho)
    r_out = [np.trace(out @ s).real for s in PAULIS[1:]]
    assert np.allclose(r_out, ch.bloch_scaling * r)


@pytest.mark.parametrize("p", [[0.5, 0.5, 0.1, -0.1], [0.5, 0.5, 0.1, 0.0], [1, 0, 0], [np.nan, 1, 0, 0]])
def test_invalid_probabilities(p):
    with pytest.raises(ValueError):
        PauliChannel(p)


def test_small_negatives_clamped():
    ch = PauliChannel([1 + 5e-13, -5e-13, 0, 0])
    assert ch.p[1] == 0.0
    with pytest.raises(ValueError):
        ch.p[0] = 0.5


def test_kraus_min_drops_zero_weights():
    ops = kraus_min(phase_damping(0.7))
    assert len(ops) == 2
    assert np.allclose(sum(K.conj().T @ K for K in ops), SIGMA_0)


def test_permutations_are_pauli_unitaries_after_channel():
    rng = np.random.default_rng(3)
    ch = PauliChannel(rng.dirichlet(np.ones(4)))
    rho = random_state(rng)
    for k, other in enumerate(permuted_channels(ch), start=1):
        s = PAULIS[k]
        assert np.allclose(other(rho), s @ ch(rho) @ s)


def test_pauli_from_scaling_inverts_bloch_scaling():
    ch = PauliChannel([0.4, 0.3, 0.2, 0.1])
    assert np.allclose(pauli_from_scaling(ch.bloch_scaling), ch.p)


@pytest.mark.parametrize("name, param, expected", [
    ("depolarizing", 0.25, [0.25] * 4),
    ("depolarizing", 1 / 3, [0, 1 / 3, 1 / 3, 1 / 3]),
    ("phase-damping", 0.3, [0.3, 0, 0, 0.7]),
    ("measure_and_prepare", 0.5, [0.375, 0.125, 0.125, 0.375]),
    ("luders_z", 0.0, [1, 0, 0, 0]),
    ("luders_z", 1.0, [0.5, 0, 0, 0.5]),
])
def test_families(name, param, expected):
    assert np.allclose(family(name, param).p, expected)


@pytest.mark.parametrize("factory, bad", [
    (depolarizing, 0.4), (phase_damping, -0.1), (measure_and_prepare, 1.5), (luders_z, 2.0),
])
def test_family_ranges(factory, bad):
    with pytest.raises(ValueError):
        factory(bad)


def test_unknown_family():
    with pytest.raises(ValueError):
        family("amplitude_damping", 0.1)


def test_depolarizing_quarter_is_full_depolarization():
    rho = random_state(np.random.default_rng(0))
    assert np.allclose(depolarizing(0.25)(rho), SIGMA_0 / 2)


def test_rotation_to_unitary():
    R = Rotation.from_euler("xyz", [0.3, -1.1, 2.0]).as_matrix()
    U = rotation_to_unitary(R)
    a = np.array([0.2, 0.5, -0.4])
    lhs = U @ sum(ai * si for ai, si in zip(a, PAULIS[1:])) @ U.conj().T
    rhs = sum(bi * si for bi, si in zip(R @ a, PAULIS[1:]))
    assert np.allclose(lhs, rhs)


def test_choi_routes_agree():
    ch = QubitChannelMap.from_pauli(PauliChannel([0.4, 0.3, 0.2, 0.1]))
    assert np.allclose(choi_from_kraus(ch.kraus), choi_from_bloch(ch.bloch_matrix()))


def test_compose_and_mix():
    a = QubitChannelMap.from_pauli(depolarizing(0.1))
    b = QubitChannelMap.unitary(PAULIS[1])
    rho = random_state(np.random.default_rng(1))
    assert np.allclose(compose(a, b)(rho), a(b(rho)))
    assert np.allclose(mix([a, b], [0.3, 0.7])(rho), 0.3 * a(rho) + 0.7 * b(rho))


def test_not_trace_preserving():
    with pytest.raises(ValueError):
        QubitChannelMap([0.5 * SIGMA_0])


def test_unital_decompose_example():
    dec = unital_decompose(np.diag([0.2, -0.3, 0.1]))
    assert np.allclose(dec.p, [0.35, 0.3, 0.25, 0.1])
    assert np.allclose(dec.bloch_matrix(), np.diag([0.2, -0.3, 0.1]))


@pytest.mark.parametrize("T", [np.diag([1.0, 1.0, -1.0]), np.eye(3) * 1.2, np.ones((2, 2))])
def test_unital_decompose_rejects(T):
    with pytest.raises(ValueError):
        unital_decompose(T)


def test_unital_frame_rotation():
    R = Rotation.from_euler("z", 90, degrees=True).as_matrix()
    T = np.diag([1.0, 0.2, 0.2]) @ R.T  # Pauli part sees x where the input had y
    dec = unital_decompose(T)
    assert np.allclose(dec.bloch_matrix(), T)
    assert np.allclose(np.abs(dec.to_pauli_frame([0, 1, 0])), [1, 0, 0], atol=1e-12)
