"""Independent minimax solver used to validate every closed form.

Eliminating the conjugates from the family equations leaves a plain convex
geometry problem: with weighted points q_i = p_i b_i, the optimal ratio is

    p* = min over r in R^3 of f(r),   f(r) = max_i (p_i + |r - q_i|),

a weighted smallest-enclosing-ball value. f is convex and piecewise smooth,
the minimizer's support has at most 4 points, and optimality of a point r
is certified by 0 lying in the convex hull of the active unit directions
(r - q_i)/|r - q_i| (a point coinciding with some q_i certifies by itself,
since the subdifferential there contains the whole unit ball).

The solver runs a seeded multistart subgradient phase with Polyak steps
against the pairwise lower bound, purely to localize the optimum, then
polishes exactly: every support subset of size 1 to 4 (ordered by how close
each index is to active at the localized point) is solved algebraically for
the equal-slack point, and the first candidate passing the global
feasibility + hull-stationarity certificate wins. Because f(r_hat) is an
upper bound at any r_hat and the certificate bounds the gap, a converged
answer is within the requested tolerance one-sidedly. No step depends on
any closed-form solver, which is what keeps the arbitration honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bloch import (
    DEGENERACY_TOL,
    PURITY_TOL,
    BlochVector,
    HelstromCertificate,
    Povm,
    PovmElement,
    WeightedEnsemble,
    ZERO_VECTOR,
)
from .errors import ConvergenceError, WeightSystemInfeasible
from .family import assemble_result, povm_from_weights
from .weights import subset_support_weights

__all__ = [
    "MinimaxSolution",
    "minimax_objective",
    "pair_lower_bound",
    "minimax_common_point",
    "recover_povm",
    "solve_oracle",
    "classical_diagonal_oracle",
    "random_povm_sample",
    "ACTIVATION_TOL",
]

ACTIVATION_TOL = 1e-7  # relative width of the reported active set
_N_STARTS = 8


@dataclass(frozen=True)
class MinimaxSolution:
    p_star: float
    r_star: BlochVector
    active_set: tuple
    iterations: int
    converged: bool


def minimax_objective(ensemble: WeightedEnsemble, r) -> float:
    """f(r) = max_i (p_i + |r - p_i b_i|)."""
    r_arr = r.as_array() if isinstance(r, BlochVector) else np.asarray(r, dtype=float).reshape(3)
    return _objective(ensemble.priors, ensemble.weighted_points, r_arr)


def _objective(pr: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    return float((pr + np.linalg.norm(r - q, axis=1)).max())


def pair_lower_bound(ensemble: WeightedEnsemble) -> float:
    """max over singletons and pairs of the triangle-inequality bound on p*."""
    return _pair_lower_bound(ensemble.priors, ensemble.weighted_points)


def _pair_lower_bound(pr: np.ndarray, q: np.ndarray) -> float:
    best = float(pr.max())
    n = len(pr)
    for i in range(n):
        for j in range(i + 1, n):
            d = float(np.linalg.norm(q[i] - q[j]))
            best = max(best, 0.5 * (pr[i] + pr[j] + d))
    return best


def _support_points(pr: np.ndarray, q: np.ndarray, subset) -> list:
    """Equal-slack points for a support subset: all r with p_i + |r - q_i| equal on it.

    Size 1 is the point itself; size 2 the balanced point on the segment;
    sizes 3 and 4 reduce to a linear system for r as an affine function of p
    plus one quadratic. Inconsistent or rank-deficient systems return
    nothing (their optima are covered by smaller subsets).
    """
    s = list(subset)
    if len(s) == 1:
        return [q[s[0]].copy()]
    if len(s) == 2:
        i, j = s
        d = q[j] - q[i]
        dn = float(np.linalg.norm(d))
        if dn <= 1e-15:
            return []
        p = 0.5 * (pr[i] + pr[j] + dn)
        if p < pr[i] - 1e-15 or p < pr[j] - 1e-15:
            return []
        return [q[i] + ((p - pr[i]) / dn) * d]

    i0 = s[0]
    rest = s[1:]
    e = q[rest] - q[i0]
    # 2 rt.e_m = |e_m|^2 + (p_m - p_0)(2p - p_0 - p_m): affine in p
    h0 = np.einsum("ij,ij->i", e, e) - (pr[rest] - pr[i0]) * (pr[rest] + pr[i0])
    h1 = 2.0 * (pr[rest] - pr[i0])
    u0, _, rank, _ = np.linalg.lstsq(2.0 * e, h0, rcond=None)
    u1, _, _, _ = np.linalg.lstsq(2.0 * e, h1, rcond=None)
    if rank < len(rest):
        return []
    if (
        np.linalg.norm(2.0 * e @ u0 - h0) > 1e-9
        or np.linalg.norm(2.0 * e @ u1 - h1) > 1e-9
    ):
        return []
    # |rt(p)|^2 = (p - p_0)^2 with rt(p) = u0 + u1 p
    alpha = float(u1 @ u1) - 1.0
    beta = 2.0 * float(u0 @ u1) + 2.0 * pr[i0]
    gamma = float(u0 @ u0) - pr[i0] ** 2
    roots = []
    if abs(alpha) <= 1e-14:
        if abs(beta) > 1e-14:
            roots.append(-gamma / beta)
    else:
        disc = beta * beta - 4.0 * alpha * gamma
        if disc >= -1e-12:
            sq = float(np.sqrt(max(disc, 0.0)))
            roots.extend([(-beta + sq) / (2.0 * alpha), (-beta - sq) / (2.0 * alpha)])
    out = []
    for p in roots:
        if not np.isfinite(p):
            continue
        if p < pr[s].max() - 1e-12:
            continue
        out.append(q[i0] + u0 + u1 * p)
    return out


def _certify(pr: np.ndarray, q: np.ndarray, r: np.ndarray, windows) -> tuple | None:
    """Global-optimality certificate at r: (f(r), window-active indices) or None.

    Feasibility is free (p_hat is recomputed as f(r)); what is checked is
    stationarity, 0 in the convex hull of active unit directions, with the
    coincident-point rule as the degenerate case.
    """
    dist = np.linalg.norm(r - q, axis=1)
    f_vals = pr + dist
    p_hat = float(f_vals.max())
    for w in windows:
        active = np.flatnonzero(f_vals >= p_hat - w)
        if dist[active].min() <= 1e-12:
            return p_hat, tuple(int(i) for i in active)
        dirs = (r - q[active]) / dist[active][:, None]
        mu, _ = subset_support_weights(dirs, total=1.0)
        if mu is not None:
            return p_hat, tuple(int(i) for i in active)
    return None


def minimax_common_point(
    ensemble: WeightedEnsemble,
    tol: float = 1e-10,
    max_iters: int = 400,
    seed: int = 0,
) -> MinimaxSolution:
    """Minimize f over R^3; certified global within tol when converged=True.

    Deterministic for fixed (ensemble, tol, seed): the multistart spread,
    subset enumeration order and tie-breaks are all fixed functions of the
    inputs.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    pr = ensemble.priors
    q = ensemble.weighted_points
    n = ensemble.n
    lower = _pair_lower_bound(pr, q)

    r0 = pr @ q
    rng = np.random.default_rng(seed)
    spread = max(float(np.linalg.norm(q - r0, axis=1).max()), 1e-3)
    starts = np.vstack([r0, r0 + spread * rng.standard_normal((_N_STARTS - 1, 3))])

    R = starts.copy()
    best_f = np.full(_N_STARTS, np.inf)
    best_r = starts.copy()
    arange = np.arange(_N_STARTS)
    iterations = 0
    stall = 0
    for k in range(max_iters):
        diff = R[:, None, :] - q[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        f_all = pr[None, :] + dist
        idx = f_all.argmax(axis=1)
        f = f_all[arange, idx]
        improved = f < best_f - 1e-15
        best_r[improved] = R[improved]
        best_f[improved] = f[improved]
        iterations = k + 1
        if best_f.min() <= lower + max(tol, 1e-12):
            break
        stall = 0 if improved.any() else stall + 1
        if stall >= 40 and k >= 80:
            break
        d_star = dist[arange, idx]
        g = np.zeros((_N_STARTS, 3))
        moving = d_star > 1e-15
        g[moving] = diff[arange, idx][moving] / d_star[moving, None]
        step = (f - lower) / (1.0 + 0.05 * k)
        R = R - step[:, None] * g

    best = int(np.argmin(best_f))
    r_loc = best_r[best]

    # polish: exact subset solves ordered by activity at the localized point
    closeness = pr + np.linalg.norm(r_loc - q, axis=1)
    order = [int(i) for i in np.argsort(-closeness, kind="stable")]
    windows = sorted({1e-12, max(tol, 1e-12)})
    for size in range(1, min(4, n) + 1):
        for subset in combinations(order, size):
            for r_cand in _support_points(pr, q, subset):
                hit = _certify(pr, q, r_cand, windows)
                if hit is None:
                    continue
                p_hat, _ = hit
                f_vals = pr + np.linalg.norm(r_cand - q, axis=1)
                active = tuple(
                    int(i) for i in np.flatnonzero(f_vals >= p_hat * (1.0 - ACTIVATION_TOL))
                )
                return MinimaxSolution(
                    p_star=p_hat,
                    r_star=BlochVector.from_array(r_cand),
                    active_set=active,
                    iterations=iterations,
                    converged=True,
                )

    f_loc = _objective(pr, q, r_loc)
    f_vals = pr + np.linalg.norm(r_loc - q, axis=1)
    active = tuple(int(i) for i in np.flatnonzero(f_vals >= f_loc * (1.0 - ACTIVATION_TOL)))
    return MinimaxSolution(
        p_star=f_loc,
        r_star=BlochVector.from_array(r_loc),
        active_set=active,
        iterations=iterations,
        converged=False,
    )


def recover_povm(ensemble: WeightedEnsemble, solution: MinimaxSolution) -> tuple:
    """(Povm, HelstromCertificate) realized at the minimax optimum.

    Pure conjugates get weights from the exact support enumeration; mixed
    ones get zero elements. At p* = max p_i (guess regime) the measurement
    collapses to the identity on the most likely state and the certificate
    is flagged degenerate.
    """
    if not solution.converged:
        raise ConvergenceError("cannot recover a POVM from a non-converged solution")
    pr = ensemble.priors
    q = ensemble.weighted_points
    n = ensemble.n
    p = float(solution.p_star)
    r = solution.r_star.as_array()

    if p <= pr.max() + DEGENERACY_TOL:
        near = np.flatnonzero(pr >= p - 1e-9)
        k = int(near[np.argmin(np.linalg.norm(r - q[near], axis=1))])
        p = float(max(p, pr[k]))
        conj = []
        for i in range(n):
            gap = p - pr[i]
            if i == k or gap <= 1e-15:
                conj.append(ZERO_VECTOR)
            else:
                conj.append(BlochVector.from_array((r - q[i]) / gap))
        povm = Povm(
            tuple(PovmElement(1.0 if i == k else 0.0, ZERO_VECTOR) for i in range(n))
        )
        certificate = HelstromCertificate(
            p=p,
            common_point=BlochVector.from_array(r),
            conjugates=tuple(conj),
            scaled_priors=tuple(np.minimum(pr / p, 1.0)),
            lambdas=(0.0,) * n,
            pure_mask=tuple(c.norm() >= 1.0 - PURITY_TOL for c in conj),
            degenerate=True,
            weights_unique=True,
        )
        return povm, certificate

    c = (r - q) / (p - pr)[:, None]
    norms = np.linalg.norm(c, axis=1)
    pure = norms >= 1.0 - PURITY_TOL
    if not pure.any():
        raise WeightSystemInfeasible(
            "no pure conjugates at the recovered optimum", directions=c
        )
    w_pure, unique = subset_support_weights(c[pure], total=2.0)
    if w_pure is None:
        raise WeightSystemInfeasible(
            f"weight system infeasible on active set {tuple(np.flatnonzero(pure))}",
            directions=c[pure],
        )
    w = np.zeros(n)
    w[pure] = w_pure
    povm = povm_from_weights(w, c)
    lambdas = w * (p - pr) / (4.0 * p)
    certificate = HelstromCertificate(
        p=p,
        common_point=BlochVector.from_array(r),
        conjugates=tuple(BlochVector.from_array(row) for row in c),
        scaled_priors=tuple(pr / p),
        lambdas=tuple(lambdas),
        pure_mask=tuple(bool(m) for m in pure),
        degenerate=False,
        weights_unique=unique,
    )
    return povm, certificate


def solve_oracle(
    ensemble: WeightedEnsemble,
    tol: float = 1e-10,
    max_iters: int = 400,
    seed: int = 0,
):
    """Full oracle pipeline returning a graded DiscriminationResult."""
    solution = minimax_common_point(ensemble, tol=tol, max_iters=max_iters, seed=seed)
    if not solution.converged:
        raise ConvergenceError(
            f"minimax did not certify an optimum within {solution.iterations} iterations"
        )
    povm, certificate = recover_povm(ensemble, solution)
    return assemble_result(
        ensemble,
        certificate.p,
        certificate.common_point,
        certificate.conjugates,
        povm,
        "oracle",
        lambdas=certificate.lambdas,
        weights_unique=certificate.weights_unique,
    )


def classical_diagonal_oracle(ensemble: WeightedEnsemble) -> float:
    """Exact optimum for z-axis states: best up-guess plus best down-guess.

    A measurement diagonal in the z basis is the best possible for diagonal
    states, and then the problem is classical: assign outcome "up" to the
    state maximizing p_i (1 + z_i)/2 and "down" to the one maximizing
    p_j (1 - z_j)/2 (the same index may win both, which is the guess
    strategy).
    """
    b = ensemble.bloch_matrix
    if np.abs(b[:, :2]).max() > 1e-12:
        raise ValueError("classical_diagonal_oracle needs all states on the z axis")
    pr = ensemble.priors
    up = pr * (1.0 + b[:, 2]) / 2.0
    down = pr * (1.0 - b[:, 2]) / 2.0
    return float(up.max() + down.max())


def random_povm_sample(ensemble: WeightedEnsemble, count: int, seed: int = 0) -> float:
    """Best success probability among `count` seeded random complete POVMs.

    Construction is rejection-free: trace parts from a normalized gamma
    sample, vector parts drawn inside each element's PSD cone, re-centered
    to completeness (which preserves the zero sum), then shrunk per sample
    by the single factor restoring every |v_i| <= a_i. Deterministic for a
    fixed seed.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    n = ensemble.n
    a = rng.gamma(2.0, size=(count, n))
    a /= a.sum(axis=1, keepdims=True)
    dirs = rng.standard_normal((count, n, 3))
    dn = np.linalg.norm(dirs, axis=2, keepdims=True)
    dirs /= np.where(dn > 1e-12, dn, 1.0)
    v = a[:, :, None] * rng.uniform(size=(count, n, 1)) * dirs
    v -= a[:, :, None] * v.sum(axis=1, keepdims=True)
    vn = np.linalg.norm(v, axis=2)
    with np.errstate(divide="ignore"):
        ratio = np.where(vn > 0.0, a / np.where(vn > 0.0, vn, 1.0), np.inf)
    shrink = np.minimum(1.0, ratio.min(axis=1)) * (1.0 - 1e-12)
    v *= shrink[:, None, None]
    pr = ensemble.priors
    b = ensemble.bloch_matrix
    success = a @ pr + np.einsum("snj,nj->s", v, pr[:, None] * b)
    return float(success.max())
