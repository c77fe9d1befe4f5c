"""
Unbiased binary qubit observables and generic two-outcome POVMs.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import SIGMA_0, bloch_operator, hermitian, hermitian_eig, DEFAULT_TOL

UNIT_NORM_SLACK = 1e-9
_DEFAULT_AXIS = (0.0, 0.0, 1.0)


def unit_vector(n, slack=UNIT_NORM_SLACK):
    """Return `n` as a unit float 3-vector.

    Vectors whose norm is within `slack` of one are renormalized; anything
    else is rejected rather than silently rescaled.
    """
    n = np.asarray(n, dtype=float).reshape(-1)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise ValueError(f"direction must be a finite 3-vector, got {n!r}")
    norm = np.linalg.norm(n)
    if abs(norm - 1.0) > slack:
        raise ValueError(f"direction must have unit norm, got norm {norm:.12g}")
    return n / norm


@dataclass(frozen=True, eq=False)
class UnbiasedBinaryObservable:
    """The observable ``A(+-) = (1 +- s n.sigma) / 2``.

    Parameters
    ----------
    s : float
        Sharpness in ``[0, 1]``; ``s = 1`` is projective, ``s = 0`` a coin toss.
    n : array_like
        Unit Bloch direction.  Ignored (stored as the z axis) when ``s = 0``.
    """

    s: float
    n: np.ndarray = field(default=_DEFAULT_AXIS)

    def __post_init__(self):
        s = float(self.s)
        if not 0.0 <= s <= 1.0:
            raise ValueError(f"sharpness must lie in [0, 1], got {s}")
        n = unit_vector(self.n) if s > 0 else np.array(_DEFAULT_AXIS)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "n", n)

    def __eq__(self, other):
        if not isinstance(other, UnbiasedBinaryObservable):
            return NotImplemented
        if self.s == 0 and other.s == 0:
            return True
        return self.s == other.s and bool(np.array_equal(self.n, other.n))

    def __hash__(self):
        return hash((self.s, tuple(self.n)) if self.s else (0.0,))

    @property
    def bloch(self):
        """The Bloch vector ``s n`` of the plus effect (up to the factor 1/2)."""
        return self.s * self.n

    def effects(self):
        return BinaryObservable(effect_of(self, +1), effect_of(self, -1))

    def to_json(self):
        return {"s": self.s, "n": [float(x) for x in self.n]}

    @classmethod
    def from_json(cls, data):
        return cls(data["s"], data.get("n", _DEFAULT_AXIS))


def effect_of(obs, outcome):
    """Effect operator of `obs` for outcome ``+1`` or ``-1`` (``"+"``/``"-"`` also accepted)."""
    sign = {1: 1, -1: -1, "+": 1, "-": -1}.get(outcome)
    if sign is None:
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    return 0.5 * (SIGMA_0 + sign * obs.s * bloch_operator(obs.n))


class BinaryObservable:
    """A two-outcome POVM on ``C^d``.

    Both effects must be positive semidefinite and sum to the identity.
    Used for the qubit observables produced by post-processing or by
    conjugate-channel pullbacks, and for effects on a dilation space.
    """

    def __init__(self, plus_effect, minus_effect=None, tol=DEFAULT_TOL):
        plus = hermitian(plus_effect)
        ident = np.eye(plus.shape[0])
        minus = ident - plus if minus_effect is None else hermitian(minus_effect)
        if minus.shape != plus.shape:
            raise ValueError("effects act on different spaces")
        if np.max(np.abs(plus + minus - ident)) > 1e-12:
            raise ValueError("effects do not sum to the identity")
        for name, E in (("plus", plus), ("minus", minus)):
            if hermitian_eig(E).eigenvalues[-1] < -tol:
                raise ValueError(f"{name} effect is not positive semidefinite")
        self.plus_effect = plus
        self.minus_effect = minus

    @property
    def dim(self):
        return self.plus_effect.shape[0]

    @property
    def effects(self):
        return (self.plus_effect, self.minus_effect)

    def probabilities(self, rho):
        return np.array([np.trace(rho @ E).real for E in self.effects])

    def __repr__(self):
        return f"BinaryObservable(dim={self.dim})"


class PostProcessing:
    """Column-stochastic 2x2 matrix ``mu[x, y]`` sending outcome ``y`` to ``x``."""

    def __init__(self, matrix):
        mu = np.asarray(matrix, dtype=float)
        if mu.shape != (2, 2):
            raise ValueError("binary post-processing must be a 2x2 matrix")
        if np.any(mu < 0) or np.any(mu > 1):
            raise ValueError("post-processing entries must lie in [0, 1]")
        if np.max(np.abs(mu.sum(axis=0) - 1.0)) > 1e-12:
            raise ValueError("post-processing columns must sum to one")
        self.matrix = mu


def post_process(obs, mu):
    """``(mu o A)(x) = sum_y mu[x, y] A(y)``."""
    if not isinstance(mu, PostProcessing):
        mu = PostProcessing(mu)
    if isinstance(obs, UnbiasedBinaryObservable):
        obs = obs.effects()
    E = obs.effects
    out = [mu.matrix[x, 0] * E[0] + mu.matrix[x, 1] * E[1] for x in range(2)]
    return BinaryObservable(*out)


def sharpness_reduction(s, t):
    """The post-processing taking ``A_{s,n}`` to ``A_{t,n}``; needs ``0 <= t <= s``, ``s > 0``."""
    if s <= 0:
        raise ValueError("sharpness reduction needs s > 0")
    a, b = (s + t) / (2 * s), (s - t) / (2 * s)
    return PostProcessing([[a, b], [b, a]])


def noise_order(t, s):
    """Whether ``A_{t,n}`` is a post-processing of ``A_{s,n}``."""
    return t <= s + 1e-15
