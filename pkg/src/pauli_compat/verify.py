"""
Independent checks of compatibility verdicts.

Nothing here calls the closed-form criterion: certificates are validated by
direct eigenvalue computations, lower bounds come from a randomized search
over ancilla effects, and instruments are simulated on random states.
Eigenvalues here come from LAPACK (``numpy.linalg``), not from the Jacobi
solver used elsewhere in the package.
"""

from dataclasses import dataclass

import numpy as np

from .channels import apply as pauli_apply
from .dilations import induced_observable, sigma_operators, stinespring_dilate
from .linalg import partial_trace_second
from .observables import BinaryObservable, unit_vector

PSD_TOL = 1e-9
NORMALIZATION_TOL = 1e-10


def make_rng(seed):
    """Counter-based (Philox) generator; results depend only on `seed`."""
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


def random_density_matrix(rng):
    """``G G^* / tr(G G^*)`` with ``G`` a 2x2 standard complex Gaussian matrix."""
    G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def orthonormal_completion(n):
    """Deterministic ``(n1, n2)`` completing `n` to a right-handed orthonormal frame.

    ``n1`` is the normalized part of the canonical axis least aligned with
    `n` orthogonal to `n`; ``n2 = n x n1``.
    """
    n = unit_vector(n)
    e = np.eye(3)[int(np.argmin(np.abs(n)))]
    n1 = e - (e @ n) * n
    n1 /= np.linalg.norm(n1)
    return n1, np.cross(n, n1)


def _min_eig(H):
    return float(np.linalg.eigvalsh(0.5 * (H + H.conj().T))[0])


def certificate_check(cert, ch, n, psd_tol=PSD_TOL, norm_tol=NORMALIZATION_TOL):
    """Check dual feasibility of ``(lam, m)`` for the instance ``(ch, n)``.

    Feasible means ``lam >= 0``, ``lam - m.Sigma >= 0`` and ``m.n = 1``.  By
    weak duality ``tr lam`` then bounds the sharpness of every observable
    along `n` compatible with `ch`.

    Returns
    -------
    feasible : bool
    upper_bound : float
        ``tr lam`` (meaningful only when feasible).
    """
    n = unit_vector(n)
    lam = np.asarray(cert.lam, dtype=complex)
    m = np.asarray(cert.m, dtype=float)
    if lam.shape != (4, 4) or m.shape != (3,):
        return False, float("nan")
    mS = sum(mi * Si for mi, Si in zip(m, sigma_operators(ch)))
    feasible = (np.max(np.abs(lam - lam.conj().T)) <= 1e-12
                and _min_eig(lam) >= -psd_tol
                and _min_eig(lam - mS) >= -psd_tol
                and abs(m @ n - 1.0) <= norm_tol)
    return bool(feasible), float(np.trace(lam).real)


@dataclass(frozen=True)
class SearchReport:
    best_s: float
    best_effect: np.ndarray
    iterations: int
    seed: int

    def to_json(self, upper_bound=None):
        out = {"best_s": self.best_s, "seed": self.seed, "iterations": self.iterations}
        if upper_bound is not None:
            out["upper_bound"] = upper_bound
            out["gap"] = upper_bound - self.best_s
        return out


def primal_feasible(effect, ch, n, psd_tol=PSD_TOL, constraint_tol=1e-8):
    """Whether `effect` satisfies ``0 <= A' <= 1`` and both direction constraints."""
    E = np.asarray(effect, dtype=complex)
    n1, n2 = orthonormal_completion(n)
    S = sigma_operators(ch)
    ev = np.linalg.eigvalsh(0.5 * (E + E.conj().T))
    if ev[0] < -psd_tol or ev[-1] > 1 + psd_tol:
        return False
    for d in (n1, n2):
        if abs(np.trace(E @ sum(di * Si for di, Si in zip(d, S))).real) > constraint_tol:
            return False
    return True


def primal_objective(effect, ch, n):
    S = sigma_operators(ch)
    return float(np.trace(np.asarray(effect) @ sum(ni * Si for ni, Si in zip(unit_vector(n), S))).real)


class _Feasibilizer:
    """Maps a Hermitian ``H`` to the feasible effect ``1/2 + alpha P(H)``.

    ``P`` is the Hilbert-Schmidt projection onto the two direction
    constraints (``Sigma_i`` are traceless, so ``1/2`` satisfies them) and
    ``alpha = min(1, 1 / (2 |P(H)|))`` is the largest admissible step.
    """

    def __init__(self, ch, n):
        n1, n2 = orthonormal_completion(n)
        S = sigma_operators(ch)
        self.objective = sum(ni * Si for ni, Si in zip(n, S))
        cons = [sum(di * Si for di, Si in zip(d, S)) for d in (n1, n2)]
        # orthonormal basis of span(cons) under <X, Y> = tr(X Y)
        basis = []
        for C in cons:
            for B in basis:
                C = C - np.trace(B @ C).real * B
            nrm = np.sqrt(np.trace(C @ C).real)
            if nrm > 1e-12:
                basis.append(C / nrm)
        self.basis = np.array(basis).reshape(-1, 4, 4)

    def __call__(self, H):
        """`H` has shape (..., 4, 4); returns (effects, values)."""
        if len(self.basis):
            coef = np.einsum("bij,...ji->...b", self.basis, H).real
            H = H - np.einsum("...b,bij->...ij", coef, self.basis)
        ev = np.linalg.eigvalsh(H)
        radius = np.max(np.abs(ev), axis=-1)
        alpha = np.minimum(1.0, 0.5 / np.maximum(radius, 1e-300))
        H = H * alpha[..., None, None]
        values = np.einsum("ij,...ji->...", self.objective, H).real
        return 0.5 * np.eye(4) + H, values


def _random_hermitian(rng, shape):
    G = rng.standard_normal(shape + (4, 4)) + 1j * rng.standard_normal(shape + (4, 4))
    return 0.5 * (G + np.swapaxes(G.conj(), -1, -2))


def _random_rank2_projection_offsets(rng, count):
    G = rng.standard_normal((count, 4, 2)) + 1j * rng.standard_normal((count, 4, 2))
    Q, _ = np.linalg.qr(G)
    P = Q @ np.swapaxes(Q.conj(), -1, -2)
    return P - 0.5 * np.eye(4)


def primal_search(ch, n, iterations=10_000, seed=0, batch=50):
    """Randomized lower bound on the optimal sharpness along `n`.

    Starts from random rank-2 projections on the ancilla, made feasible by
    projecting out the direction constraints and shrinking towards ``1/2``,
    then hill-climbs with Gaussian perturbations whose scale shrinks when a
    batch brings no improvement.  Every candidate counts as one iteration.

    Returns
    -------
    SearchReport
        ``best_s`` is the objective of a verified feasible effect, so it is a
        sound lower bound.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    n = unit_vector(n)
    rng = make_rng(seed)
    feas = _Feasibilizer(ch, n)

    n_init = max(1, min(iterations // 10, 200))
    H0 = _random_rank2_projection_offsets(rng, n_init)
    effects, values = feas(H0)
    k = int(np.argmax(values))
    best_H, best_E, best_s = effects[k] - 0.5 * np.eye(4), effects[k], float(values[k])
    used = n_init
    scale = 0.3
    while used < iterations:
        size = min(batch, iterations - used)
        cand = best_H + scale * _random_hermitian(rng, (size,))
        effects, values = feas(cand)
        used += size
        k = int(np.argmax(values))
        if values[k] > best_s:
            best_H, best_E, best_s = effects[k] - 0.5 * np.eye(4), effects[k], float(values[k])
        else:
            scale = max(scale * 0.9, 1e-6)

    if not primal_feasible(best_E, ch, n):
        raise RuntimeError("search produced an infeasible effect")
    return SearchReport(primal_objective(best_E, ch, n), best_E, used, int(seed))


@dataclass(frozen=True)
class InstrumentCheck:
    max_channel_error: float
    max_probability_error: float
    trials: int


def instrument(aprime, ch):
    """Instrument ``x -> (rho -> tr_K[V rho V^* (1 (x) A'(x))])`` as a list of callables."""
    if not isinstance(aprime, BinaryObservable):
        aprime = BinaryObservable(aprime)
    dim = aprime.dim
    dil = stinespring_dilate(ch, minimal=dim != 4)
    if dil.dim_k != dim:
        raise ValueError(f"ancilla effects of dimension {dim} do not fit the dilation")
    V = dil.V

    def op(E):
        lifted = np.kron(np.eye(2), E)
        return lambda rho: partial_trace_second(V @ rho @ V.conj().T @ lifted, dim)

    return [op(E) for E in aprime.effects]


def instrument_consistency(aprime, ch, trials=20, seed=0):
    """Simulate the instrument built from `aprime` on random states.

    Reports the largest deviation of ``sum_x Phi_x(rho)`` from ``Psi_p(rho)``
    and of ``tr Phi_x(rho)`` from ``tr(rho A(x))`` where ``A`` is the
    observable induced by `aprime`.
    """
    if not isinstance(aprime, BinaryObservable):
        aprime = BinaryObservable(aprime)
    phis = instrument(aprime, ch)
    induced = induced_observable(aprime, ch)
    rng = make_rng(seed)
    ch_err = prob_err = 0.0
    for _ in range(trials):
        rho = random_density_matrix(rng)
        outs = [phi(rho) for phi in phis]
        ch_err = max(ch_err, float(np.max(np.abs(sum(outs) - pauli_apply(ch, rho)))))
        for out, A in zip(outs, induced.effects):
            prob_err = max(prob_err, abs(np.trace(out).real - np.trace(rho @ A).real))
    return InstrumentCheck(ch_err, prob_err, trials)


def busch_cross_check(s, t, theta):
    """Joint measurability of two unbiased sharpness-`s`, `t` observables at angle `theta`."""
    return s * s + t * t - s * s * t * t * np.cos(theta) ** 2 <= 1.0 + 1e-15

