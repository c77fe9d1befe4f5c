import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_compat.channels import PauliChannel, depolarizing, phase_damping, unital_decompose
from pauli_compat.compatibility import (block_decompose, dual_certificate, eigenbasis,
                                        ellipsoid_lhs, ellipsoid_sample, fibonacci_directions,
                                        is_compatible, m_dot_sigma, optimal_primal,
                                        p_plus_minus, s_max, sharpest_direction, simplex_grid,
                                        simplex_region_sample, unital_is_compatible,
                                        unital_s_max)
from pauli_compat.dilations import sigma_operators
from pauli_compat.observables import UnbiasedBinaryObservable

probabilities = st.lists(st.floats(0.01, 1.0), min_size=4, max_size=4).map(
    lambda w: np.array(w) / sum(w))
directions = st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 0.1).map(lambda v: np.array(v) / np.linalg.norm(v))


def sdp_s_max(ch, n):
    """Primal SDP solved numerically: max tr(A' n.Sigma), 0 <= A' <= 1, tr(A' d.Sigma) = 0 for d perp n."""
    cp = pytest.importorskip("cvxpy")
    S = sigma_operators(ch)
    e = np.eye(3)[int(np.argmin(np.abs(n)))]
    n1 = e - (e @ n) * n
    n1 /= np.linalg.norm(n1)
    n2 = np.cross(n, n1)
    X = cp.Variable((4, 4), hermitian=True)
    dot = lambda v: sum(vi * Si for vi, Si in zip(v, S))
    cons = [X >> 0, np.eye(4) - X >> 0,
            cp.real(cp.trace(X @ dot(n1))) == 0, cp.real(cp.trace(X @ dot(n2))) == 0]
    prob = cp.Problem(cp.Maximize(cp.real(cp.trace(X @ dot(n)))), cons)
    prob.solve()
    return prob.value


@pytest.mark.parametrize("p, n", [
    ([0.4, 0.3, 0.2, 0.1], [0, 0, 1]),
    ([0.4, 0.3, 0.2, 0.1], [0.6, 0.0, 0.8]),
    ([0.7, 0.1, 0.15, 0.05], [1 / math.sqrt(3)] * 3),
    ([0.25, 0.25, 0.25, 0.25], [0, 1, 0]),
])
def test_s_max_matches_sdp(p, n):
    ch = PauliChannel(p)
    n = np.array(n)
    assert abs(s_max(ch, n) - sdp_s_max(ch, n)) <= 1e-5


def test_p_plus_minus_example():
    pm = p_plus_minus(PauliChannel([0.4, 0.3, 0.2, 0.1]))
    a = [math.sqrt(0.12), math.sqrt(0.08), math.sqrt(0.04)]
    b = [math.sqrt(0.02), math.sqrt(0.03), math.sqrt(0.06)]
    assert np.allclose(pm.p_plus, 2 * (np.array(a) + b))
    assert np.allclose(pm.p_minus, 2 * (np.array(a) - b))


def test_degenerate_axes_and_verdict():
    ch = phase_damping(0.3)
    assert p_plus_minus(ch).degenerate_axes == {1, 2}
    v = is_compatible(UnbiasedBinaryObservable(0.1, [0.6, 0, 0.8]), ch)
    assert not v.compatible and v.degenerate_violation and v.s_max == 0.0
    assert is_compatible(UnbiasedBinaryObservable(0.0, [1, 0, 0]), ch).compatible


def test_boundary_counts_as_compatible():
    ch = depolarizing(0.1)
    smax = s_max(ch, [0, 0, 1])
    assert is_compatible(UnbiasedBinaryObservable(smax, [0, 0, 1]), ch).compatible
    assert not is_compatible(UnbiasedBinaryObservable(smax + 1e-9, [0, 0, 1]), ch).compatible


def test_identity_channel_only_trivial():
    ch = PauliChannel([1, 0, 0, 0])
    for n in np.eye(3):
        assert s_max(ch, n) == 0.0
    with pytest.raises(ValueError):
        optimal_primal(ch, [0, 0, 1])
    cert = dual_certificate(ch, [0, 0, 1])
    assert cert.upper_bound == 0.0


@settings(max_examples=60, deadline=None)
@given(probabilities, directions)
def test_primal_dual_structure(p, n):
    ch = PauliChannel(p)
    prim = optimal_primal(ch, n)
    cert = dual_certificate(ch, n)
    A = prim.a_prime_plus
    assert np.allclose(A @ A, A, atol=1e-12)
    assert abs(np.trace(A).real - 2) < 1e-12
    assert abs(cert.m @ n - 1) < 1e-10
    assert abs(cert.upper_bound - prim.s_max) < 1e-10
    # complementary slackness
    assert np.allclose(cert.lam @ (np.eye(4) - A), 0, atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(probabilities, directions)
def test_block_form(p, n):
    ch = PauliChannel(p)
    prim = optimal_primal(ch, n)
    if 1 - prim.n_prime[0] ** 2 < 1e-6:
        return
    cert = dual_certificate(ch, n)
    M, g = block_decompose(cert, prim, ch, n)
    W = eigenbasis(prim.n_prime)
    assert np.allclose(W.conj().T @ W, np.eye(4), atol=1e-10)
    assert np.allclose(prim.a_prime_plus @ W[:, :2], W[:, :2], atol=1e-10)
    B = W.conj().T @ m_dot_sigma(ch, cert.m) @ W
    assert np.allclose(B[:2, :2], M, atol=1e-9)
    assert np.allclose(B[2:, 2:], -M.conj(), atol=1e-9)
    assert np.allclose(B[:2, 2:], 0, atol=1e-9)
    assert np.linalg.norm(g) <= 1 + 1e-9


def test_eigenbasis_singular_point():
    with pytest.raises(ValueError, match="unsupported basis point"):
        eigenbasis([1.0, 0.0, 0.0])


@pytest.mark.parametrize("p", [[0.4, 0.3, 0.2, 0.1], [0, 1 / 3, 1 / 3, 1 / 3], [0.25] * 4])
def test_ellipsoid_points_on_boundary(p):
    ch = PauliChannel(p)
    sample = ellipsoid_sample(ch, 300)
    assert sample.geometry == "ellipsoid"
    for b in sample.points:
        assert abs(ellipsoid_lhs(ch, b) - 1) <= 1e-9


def test_fibonacci_directions_unit():
    d = fibonacci_directions(101)
    assert np.allclose(np.linalg.norm(d, axis=1), 1)
    assert abs(d[:, 2].mean()) < 1e-12


@pytest.mark.parametrize("resolution, count", [(2, 4), (3, 10), (21, 1771)])
def test_simplex_grid(resolution, count):
    P = simplex_grid(resolution)
    assert P.shape == (count, 4)
    assert np.allclose(P.sum(axis=1), 1)
    assert [tuple(r) for r in P] == sorted(tuple(r) for r in P)


def test_simplex_region_contains_complete_depolarization():
    pts, flags = simplex_region_sample(UnbiasedBinaryObservable(0.9, [0, 0, 1]), 5)
    idx = np.flatnonzero(np.all(np.isclose(pts, 0.25), axis=1))
    assert flags[idx].all()
    corners = np.flatnonzero(np.isclose(pts.max(axis=1), 1))
    assert not flags[corners].any()


@pytest.mark.parametrize("p, axis, tie", [
    ([0.4, 0.3, 0.2, 0.1], 1, False),
    ([0.25] * 4, 1, True),
    ([0.5, 0, 0, 0.5], 3, False),
])
def test_sharpest_direction(p, axis, tie):
    got = sharpest_direction(PauliChannel(p))
    assert got[0] == axis and got[2] == tie


def test_unital_s_max_uses_rotated_direction():
    T = np.array([[0.0, 0.8, 0.0], [0.1, 0.0, 0.0], [0.0, 0.0, 0.1]])
    dec = unital_decompose(T)
    pauli = PauliChannel(dec.p)
    for n in np.eye(3):
        assert np.isclose(unital_s_max(dec, n), s_max(pauli, dec.to_pauli_frame(n)))
    obs = UnbiasedBinaryObservable(unital_s_max(dec, [0, 1, 0]), [0, 1, 0])
    assert unital_is_compatible(obs, dec).compatible
