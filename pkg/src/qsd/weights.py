"""Nonnegative weight systems over conjugate directions.

A pure-conjugate measurement is fixed by weights w >= 0 with
sum w_i = total and sum w_i d_i = 0 over the direction rows d_i.
Two solvers, used by different callers:

  min_norm_nonneg_weights   minimum-Euclidean-norm solution via an
                            active-set sweep on the equality-constrained
                            least-norm problem (symmetric configurations
                            come out symmetric)
  subset_support_weights    exact support enumeration in increasing size,
                            first nonnegative solution wins, with a
                            non-uniqueness flag (the oracle's choice:
                            supports of size <= dim + 1 always suffice)

Directions may be rows of any dimension; callers pass 2 for planar systems
and 3 otherwise.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import WeightSystemInfeasible

__all__ = ["min_norm_nonneg_weights", "subset_support_weights"]

_FEAS_TOL = 1e-10   # residual of the equality system
_NEG_TOL = 1e-12    # weights may dip below zero by at most this


def _equality_system(directions: np.ndarray, total: float) -> tuple:
    d = np.asarray(directions, dtype=float)
    if d.ndim != 2:
        raise ValueError("directions must be a 2-D array of row vectors")
    m = d.shape[0]
    a = np.vstack([d.T, np.ones((1, m))])
    rhs = np.zeros(d.shape[1] + 1)
    rhs[-1] = float(total)
    return a, rhs


def min_norm_nonneg_weights(directions, total: float = 2.0) -> np.ndarray:
    """Minimum-norm w >= 0 with sum w = total and sum w_i d_i = 0.

    Sweep: solve the least-norm equality problem on the free set, clamp the
    most negative weight to zero, repeat. Falls back to exact support
    enumeration before declaring infeasibility, so a feasible system is
    never rejected just because the sweep walked a bad path.
    """
    a, rhs = _equality_system(directions, total)
    m = a.shape[1]
    free = list(range(m))
    for _ in range(m):
        sol, _, _, _ = np.linalg.lstsq(a[:, free], rhs, rcond=None)
        if np.linalg.norm(a[:, free] @ sol - rhs) > _FEAS_TOL:
            break
        if sol.min() >= -_NEG_TOL:
            w = np.zeros(m)
            w[free] = np.clip(sol, 0.0, None)
            return w
        free.pop(int(np.argmin(sol)))
        if not free:
            break
    w, _ = subset_support_weights(directions, total)
    if w is None:
        raise WeightSystemInfeasible(
            "no nonnegative weights solve the completeness system",
            directions=np.asarray(directions, dtype=float),
        )
    return w


def subset_support_weights(directions, total: float = 2.0) -> tuple:
    """Exact solution supported on the fewest directions.

    Returns (weights, unique) where unique is False when several distinct
    minimal-support solutions exist (degenerate geometry, e.g. antipodal
    pairs of an octahedron), or (None, True) when no support of size up to
    dim + 1 is feasible. Ties among equal-size supports break by Euclidean
    norm and then by enumeration order, so results are deterministic.
    """
    a, rhs = _equality_system(directions, total)
    m = a.shape[1]
    max_support = min(m, np.asarray(directions).shape[1] + 1)
    for size in range(1, max_support + 1):
        found = []
        for subset in combinations(range(m), size):
            cols = a[:, subset]
            sol, _, _, _ = np.linalg.lstsq(cols, rhs, rcond=None)
            if np.linalg.norm(cols @ sol - rhs) > _FEAS_TOL:
                continue
            if sol.min() < -_NEG_TOL:
                continue
            w = np.zeros(m)
            w[list(subset)] = np.clip(sol, 0.0, None)
            found.append((float(w @ w), subset, w))
        if found:
            found.sort(key=lambda item: (item[0], item[1]))
            best = found[0][2]
            unique = all(np.allclose(best, other[2], atol=1e-9) for other in found[1:])
            return best, unique
    return None, True
