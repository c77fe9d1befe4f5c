"""
Closed-form compatibility of unbiased binary qubit observables with Pauli
channels, together with the optimal primal effect, the matching dual
certificate and sampling of the compatibility regions.

For a Pauli channel with probabilities ``p`` define, for ``(j, k, l)`` the
cyclic triples of ``(1, 2, 3)``::

    p_plus[j]  = 2 (sqrt(p0 pj) + sqrt(pk pl))
    p_minus[j] = 2 (sqrt(p0 pj) - sqrt(pk pl))

``A_{s,n}`` is compatible with ``Psi_p`` iff ``sum_j s^2 n_j^2 / p_plus[j]^2 <= 1``
where a term with ``p_plus[j] = 0`` forces ``s n_j = 0``.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channels import PauliChannel
from .dilations import sigma_operators
from .linalg import PAULIS
from .observables import UnbiasedBinaryObservable, unit_vector

BOUNDARY_TOL = 1e-12
AXIS_TOL = 1e-12

_PAIRS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


@dataclass(frozen=True)
class PPlusMinus:
    p_plus: np.ndarray
    p_minus: np.ndarray

    @property
    def degenerate_axes(self):
        """Axes (1-based) with ``p_plus[j] == 0``."""
        return frozenset(j + 1 for j in np.flatnonzero(self.p_plus == 0))


def p_plus_minus(ch):
    p = ch.p
    a = np.array([math.sqrt(p[i] * p[j]) for i, j, _, _ in _PAIRS])
    b = np.array([math.sqrt(p[k] * p[l]) for _, _, k, l in _PAIRS])
    return PPlusMinus(2 * (a + b), 2 * (a - b))


def _direction(n):
    return unit_vector(n)


def _blocked(pp, n):
    """True when `n` has weight on an axis with ``p_plus == 0``."""
    return bool(np.any((pp == 0) & (np.abs(n) > AXIS_TOL)))


def _inverse_quadratic(pp, n):
    """``sum_j n_j^2 / p_plus[j]^2`` over non-degenerate axes."""
    live = pp > 0
    return float(np.sum(n[live] ** 2 / pp[live] ** 2))


def s_max(ch, n):
    """Largest sharpness ``s`` with ``A_{s,n}`` compatible with `ch`.

    Returns 0 whenever `n` has weight on a degenerate axis (the direction
    cannot shed that component) or every axis is degenerate.
    """
    n = _direction(n)
    pp = p_plus_minus(ch).p_plus
    if _blocked(pp, n):
        return 0.0
    q = _inverse_quadratic(pp, n)
    return 1.0 / math.sqrt(q) if q > 0 else 0.0


@dataclass(frozen=True)
class CompatibilityVerdict:
    compatible: bool
    s_max: float
    ellipsoid_lhs: float
    degenerate_axes: frozenset
    degenerate_violation: bool = False

    def to_json(self):
        return {
            "compatible": self.compatible,
            "s_max": self.s_max,
            "ellipsoid_lhs": self.ellipsoid_lhs,
            "degenerate_axes": sorted(self.degenerate_axes),
        }


def ellipsoid_lhs(ch, bloch):
    """``sum_j b_j^2 / p_plus[j]^2`` over non-degenerate axes for ``b = s n``."""
    b = np.asarray(bloch, dtype=float)
    return _inverse_quadratic(p_plus_minus(ch).p_plus, b)


def is_compatible(obs, ch, tol=BOUNDARY_TOL):
    """Decide whether `obs` and `ch` are parts of a common instrument.

    Parameters
    ----------
    obs : UnbiasedBinaryObservable
    ch : PauliChannel
    tol : float
        Slack on ``s <= s_max``; points on the boundary count as compatible.

    Returns
    -------
    CompatibilityVerdict
    """
    pm = p_plus_minus(ch)
    pp = pm.p_plus
    b = obs.s * obs.n
    lhs = _inverse_quadratic(pp, b)
    violation = bool(np.any((pp == 0) & (np.abs(b) > AXIS_TOL)))
    smax = s_max(ch, obs.n)
    compatible = (not violation) and obs.s <= smax + tol
    return CompatibilityVerdict(compatible, smax, lhs, pm.degenerate_axes, violation)


def unital_s_max(decomposition, n):
    """:func:`s_max` for the unital channel ``U Psi_p(V^* . V) U^*``.

    The output unitary is irrelevant; the input unitary rotates the
    compatible ellipsoid.
    """
    return s_max(decomposition.channel, decomposition.to_pauli_frame(_direction(n)))


def unital_is_compatible(obs, decomposition, tol=BOUNDARY_TOL):
    rotated = UnbiasedBinaryObservable(obs.s, decomposition.to_pauli_frame(obs.n))
    return is_compatible(rotated, decomposition.channel, tol)


@dataclass(frozen=True)
class OptimalPrimal:
    """Rank-2 projection ``A'(+)`` on the 4-dim ancilla attaining ``s_max``."""

    n_prime: np.ndarray
    a_prime_plus: np.ndarray
    s_max: float

    @property
    def a_prime_minus(self):
        return np.eye(4) - self.a_prime_plus


def aprime_projection(n_prime):
    """The 4x4 projection ``(1 + n'_1 X_1 + n'_2 X_2 + n'_3 X_3) / 2`` for a unit `n_prime`."""
    a, b, c = np.asarray(n_prime, dtype=float)
    return 0.5 * np.array([
        [1, a, b, c],
        [a, 1, -1j * c, 1j * b],
        [b, 1j * c, 1, -1j * a],
        [c, -1j * b, 1j * a, 1],
    ], dtype=complex)


def optimal_primal(ch, n):
    """Optimal ancilla effect for direction `n`.

    Raises
    ------
    ValueError
        If `n` has weight on a degenerate axis or all axes are degenerate;
        then only ``s = 0`` is attainable and the trivial effect suffices.
    """
    n = _direction(n)
    pp = p_plus_minus(ch).p_plus
    if _blocked(pp, n) or _inverse_quadratic(pp, n) == 0:
        raise ValueError("direction lies on degenerate axes; only s = 0 is compatible")
    live = pp > 0
    w = np.zeros(3)
    w[live] = n[live] / pp[live]
    norm = np.linalg.norm(w)
    n_prime = w / norm
    return OptimalPrimal(n_prime, aprime_projection(n_prime), 1.0 / norm)


@dataclass(frozen=True)
class DualCertificate:
    """Dual feasible pair: ``lam >= 0``, ``lam >= m.Sigma``, ``m.n = 1``; ``tr lam`` bounds ``s``."""

    lam: np.ndarray
    m: np.ndarray
    s_max: float

    @property
    def upper_bound(self):
        return float(np.trace(self.lam).real)


def m_dot_sigma(ch, m):
    S = sigma_operators(ch)
    return sum(mi * Si for mi, Si in zip(m, S))


def dual_certificate(ch, n):
    """Dual certificate matching :func:`optimal_primal`.

    ``m = Q^-2 n / |Q^-1 n|^2`` with ``Q = diag(p_plus)`` restricted to the
    non-degenerate axes, and ``lam = A' (m.Sigma) A'``.  When `n` touches a
    degenerate axis the trivial bound ``s = 0`` is certified by ``lam = 0``
    and ``m`` supported on that axis (where ``Sigma_j = 0``).
    """
    n = _direction(n)
    pp = p_plus_minus(ch).p_plus
    if _blocked(pp, n) or _inverse_quadratic(pp, n) == 0:
        dead = np.flatnonzero(pp == 0)
        j = dead[np.argmax(np.abs(n[dead]))]
        m = np.zeros(3)
        m[j] = 1.0 / n[j]
        return DualCertificate(np.zeros((4, 4), dtype=complex), m, 0.0)
    live = pp > 0
    m = np.zeros(3)
    m[live] = n[live] / pp[live] ** 2
    m /= _inverse_quadratic(pp, n)
    prim = optimal_primal(ch, n)
    A = prim.a_prime_plus
    lam = A @ m_dot_sigma(ch, m) @ A
    lam = 0.5 * (lam + lam.conj().T)
    return DualCertificate(lam, m, prim.s_max)


def eigenbasis(n_prime):
    """Columns ``(v+, v-, u+, u-)``: eigenvectors of ``A'(+)`` for eigenvalues 1, 1, 0, 0.

    Undefined at ``n'_1 = +-1``.
    """
    a, b, c = n_prime
    if 1.0 - a * a < 1e-12:
        raise ValueError("unsupported basis point: n'_1 = +-1")

    def v(sg):
        return np.array([b + sg * 1j * c, -sg * b - 1j * c, 1 + sg * a,
                         sg * 1j * (1 + sg * a)]) / (2 * math.sqrt(1 + sg * a))

    def u(sg):
        return np.array([-b + sg * 1j * c, -sg * b + 1j * c, 1 + sg * a,
                         -sg * 1j * (1 + sg * a)]) / (2 * math.sqrt(1 + sg * a))

    return np.column_stack([v(1), v(-1), u(1), u(-1)])


def block_decompose(cert, prim, ch, n):
    """Upper-left block ``M = (s/2)(1 + g.sigma)`` of ``m.Sigma`` in the ``A'`` eigenbasis.

    In the basis ``(v+, v-, u+, u-)`` the operator ``m.Sigma`` is
    ``diag(M, -conj(M))``, so dual feasibility reduces to ``|g| <= 1``.
    Verification aid only.

    Returns
    -------
    M : ndarray, shape (2, 2)
    g : ndarray, shape (3,)
    """
    _direction(n)
    a, b, c = prim.n_prime
    if 1.0 - a * a < 1e-12:
        raise ValueError("unsupported basis point: n'_1 = +-1")
    pm = p_plus_minus(ch)
    ratio = np.divide(pm.p_minus, pm.p_plus, out=np.zeros(3), where=pm.p_plus > 0)
    root = math.sqrt(1.0 - a * a)
    g = np.array([
        ratio[1] * b * b - ratio[2] * c * c,
        (ratio[1] + ratio[2]) * b * c,
        -a * root * ratio[0],
    ]) / root
    s = cert.s_max
    M = 0.5 * s * (PAULIS[0] + g[0] * PAULIS[1] + g[1] * PAULIS[2] + g[2] * PAULIS[3])
    return M, g


def fibonacci_directions(count):
    """`count` roughly uniform unit vectors (golden-angle spiral)."""
    k = np.arange(count) + 0.5
    z = 1.0 - 2.0 * k / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * k
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


@dataclass(frozen=True)
class EllipsoidSample:
    """Points on the boundary of the compatible Bloch-vector region.

    ``geometry`` is ``"ellipsoid"``, ``"segment"`` (all points on one axis,
    spread evenly between the two endpoints) or ``"point"`` (the origin).
    """

    points: np.ndarray
    geometry: str


def ellipsoid_sample(ch, count):
    if count < 1:
        raise ValueError("count must be at least 1")
    pp = p_plus_minus(ch).p_plus
    live = np.flatnonzero(pp > 0)
    if live.size == 0:
        return EllipsoidSample(np.zeros((1, 3)), "point")
    if live.size == 1:
        j = live[0]
        pts = np.zeros((count, 3))
        pts[:, j] = np.linspace(-pp[j], pp[j], count) if count > 1 else pp[j]
        return EllipsoidSample(pts, "segment")
    if live.size == 2:  # not reachable for probability vectors; kept for safety
        raise ValueError("exactly one degenerate axis cannot occur for a Pauli channel")
    dirs = fibonacci_directions(count)
    radii = 1.0 / np.sqrt(np.sum(dirs ** 2 / pp ** 2, axis=1))
    return EllipsoidSample(dirs * radii[:, None], "ellipsoid")


def simplex_grid(resolution):
    """Barycentric lattice ``k / (R - 1)`` on the probability 3-simplex, lexicographic order."""
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    m = resolution - 1
    pts = [(a, b, c, m - a - b - c)
           for a, b, c in itertools.product(range(m + 1), repeat=3)
           if a + b + c <= m]
    return np.array(pts, dtype=float) / m


def simplex_region_sample(obs, grid_resolution):
    """Evaluate compatibility of `obs` at every node of :func:`simplex_grid`.

    Returns
    -------
    points : ndarray, shape (N, 4)
    compatible : ndarray of bool, shape (N,)
    """
    P = simplex_grid(grid_resolution)
    flags = np.array([is_compatible(obs, PauliChannel(p)).compatible for p in P])
    return P, flags


def sharpest_direction(ch):
    """Axis (1-based) of largest ``p_plus``, its value, and whether the maximum is tied."""
    pp = p_plus_minus(ch).p_plus
    j = int(np.argmax(pp))
    tie = int(np.sum(pp >= pp[j] - 1e-12)) > 1
    return j + 1, float(pp[j]), tie


__all__ = [
    "PPlusMinus", "p_plus_minus", "s_max", "CompatibilityVerdict",
    "unital_s_max", "unital_is_compatible",
    "ellipsoid_lhs", "is_compatible", "OptimalPrimal", "aprime_projection",
    "optimal_primal", "DualCertificate", "m_dot_sigma", "dual_certificate",
    "eigenbasis", "block_decompose", "fibonacci_directions",
    "EllipsoidSample", "ellipsoid_sample", "simplex_grid",
    "simplex_region_sample", "sharpest_direction",
]
