"""Closed-form solvers: two states, three states, diagonal, cone, shell, mirror.

Every solver here reduces its case to a ratio p, a common point r, and a
nonnegative weight system over pure conjugate directions, then hands the
pieces to family.assemble_result, which refuses anything that fails the
certificate suite. Where a case has several closed-form candidates (three
states: three boundary pairs and an interior quadratic), all candidates are
built, each is validated independently, and selection is by the total order
(validity, p, candidate index); if nothing validates, the minimax oracle
takes over and the result is tagged accordingly.

The guess regime is handled explicitly everywhere: whenever the best
formula value does not exceed the largest prior, the optimum is to always
guess the most likely state, the certificate is degenerate (identity
measurement, all multipliers zero, no orthogonality witness), and the
formula value max_i p_i is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bloch import (
    DEGENERACY_TOL,
    PURITY_TOL,
    BlochVector,
    DiscriminationResult,
    Povm,
    PovmElement,
    QubitState,
    WeightedEnsemble,
    ZERO_VECTOR,
)
from .errors import (
    CertificateError,
    DegenerateGeometryError,
    DegenerateRatioError,
    GramConsistencyError,
    WeightSystemInfeasible,
)
from .family import assemble_result, guess_result, povm_from_weights
from .oracle import solve_oracle
from .weights import min_norm_nonneg_weights

__all__ = [
    "ThreeStateCoefficients",
    "MirrorRegime",
    "solve_two_state",
    "solve_three_state",
    "lambdas_three_state",
    "gram_identity_residual",
    "solve_symmetric_shell",
    "solve_diagonal",
    "cone_ensemble",
    "solve_cone",
    "mirror_ensemble",
    "mirror_threshold",
    "mirror_regime",
    "solve_mirror_symmetric",
    "solve_auto",
]


# ---------------------------------------------------------------------------
# two states


def solve_two_state(ensemble: WeightedEnsemble) -> DiscriminationResult:
    """p_opt = max(1/2 (1 + |q_2 - q_1|), max prior), q_i = p_i b_i.

    The balanced formula wins exactly when |q_2 - q_1| >= |p_2 - p_1|;
    below that the optimum is the guess strategy. Identical weighted points
    with equal priors get the canonical output: p = 1/2, both elements I/2,
    an arbitrary antipodal conjugate pair along z.
    """
    if ensemble.n != 2:
        raise ValueError(f"solve_two_state needs exactly 2 states, got {ensemble.n}")
    pr = ensemble.priors
    q = ensemble.weighted_points
    d = q[1] - q[0]
    dn = float(np.linalg.norm(d))
    p = 0.5 * (1.0 + dn)

    if dn <= 1e-15:
        if abs(pr[0] - pr[1]) <= 1e-15:
            povm = Povm((PovmElement(0.5, ZERO_VECTOR), PovmElement(0.5, ZERO_VECTOR)))
            conj = (BlochVector(0.0, 0.0, 1.0), BlochVector(0.0, 0.0, -1.0))
            return assemble_result(
                ensemble,
                float(pr.max()),
                BlochVector.from_array(q[0]),
                conj,
                povm,
                "two-state",
                lambdas=(0.0, 0.0),
            )
        return guess_result(ensemble, int(np.argmax(pr)), "two-state")
    if p < pr.max():
        return guess_result(ensemble, int(np.argmax(pr)), "two-state")

    c1 = d / (2.0 * p - 1.0)
    c2 = -c1
    r = q[0] + (p - pr[0]) * c1
    povm = povm_from_weights((1.0, 1.0), (c1, c2))
    lambdas = ((1.0 - pr[0] / p) / 4.0, (1.0 - pr[1] / p) / 4.0)
    return assemble_result(
        ensemble, p, BlochVector.from_array(r), (c1, c2), povm, "two-state", lambdas=lambdas
    )


# ---------------------------------------------------------------------------
# three states


@dataclass(frozen=True)
class ThreeStateCoefficients:
    """Squared gaps between weighted Bloch points and the interior quadratic.

    The interior ratio is a root of quad_p2 * p^2 + quad_p1 * p + quad_p0 = 0,
    which encodes coplanarity of the three unit conjugates (the polynomial is
    the negated coplanarity defect, so its roots are unchanged).
    """

    dist12_sq: float
    dist13_sq: float
    dist23_sq: float
    quad_p2: float
    quad_p1: float
    quad_p0: float

    def __post_init__(self) -> None:
        for name in ("dist12_sq", "dist13_sq", "dist23_sq"):
            if getattr(self, name) < -1e-15:
                raise ValueError(f"{name} must be nonnegative")

    @classmethod
    def from_ensemble(cls, ensemble: WeightedEnsemble) -> "ThreeStateCoefficients":
        if ensemble.n != 3:
            raise ValueError("ThreeStateCoefficients needs exactly 3 states")
        q = ensemble.weighted_points
        p1, p2, p3 = ensemble.priors
        i = float((q[0] - q[1]) @ (q[0] - q[1]))
        j = float((q[0] - q[2]) @ (q[0] - q[2]))
        k = float((q[1] - q[2]) @ (q[1] - q[2]))
        quad_p2 = (
            4.0 * (-p1 * p2 + p1 * p3 + p2 * p3 - p3 ** 2) * i
            + 4.0 * (p1 * p2 - p1 * p3 + p2 * p3 - p2 ** 2) * j
            + 4.0 * (p1 * p2 + p1 * p3 - p2 * p3 - p1 ** 2) * k
            + 2.0 * i * j + 2.0 * i * k + 2.0 * j * k
            - i ** 2 - j ** 2 - k ** 2
        )
        quad_p1 = (
            2.0 * (
                (p1 ** 2 * p2 + p1 * p2 ** 2 - p1 ** 2 * p3 - p1 * p3 ** 2
                 - p2 ** 2 * p3 - p2 * p3 ** 2 + 2.0 * p3 ** 3)
                - p1 * k - p2 * j + p3 * i
            ) * i
            + 2.0 * (
                (-p1 ** 2 * p2 - p1 * p2 ** 2 + p1 ** 2 * p3 + p1 * p3 ** 2
                 - p2 ** 2 * p3 - p2 * p3 ** 2 + 2.0 * p2 ** 3)
                - p1 * k + p2 * j - p3 * i
            ) * j
            + 2.0 * (
                (-p1 ** 2 * p2 - p1 * p2 ** 2 - p1 ** 2 * p3 - p1 * p3 ** 2
                 + p2 ** 2 * p3 + p2 * p3 ** 2 + 2.0 * p1 ** 3)
                + p1 * k - p2 * j - p3 * i
            ) * k
        )
        quad_p0 = (
            (-p1 ** 2 * p2 ** 2 + p1 ** 2 * p3 ** 2 + p2 ** 2 * p3 ** 2 - p3 ** 4
             + p1 ** 2 * k + p2 ** 2 * j - p3 ** 2 * i) * i
            + (p1 ** 2 * p2 ** 2 - p1 ** 2 * p3 ** 2 + p2 ** 2 * p3 ** 2 - p2 ** 4
               + p1 ** 2 * k - p2 ** 2 * j + p3 ** 2 * i) * j
            + (p1 ** 2 * p2 ** 2 + p1 ** 2 * p3 ** 2 - p2 ** 2 * p3 ** 2 - p1 ** 4
               - p1 ** 2 * k + p2 ** 2 * j + p3 ** 2 * i) * k
            - i * j * k
        )
        return cls(i, j, k, quad_p2, quad_p1, quad_p0)

    def roots(self) -> tuple:
        """Real roots, the (-quad_p1 + sqrt(disc)) / (2 quad_p2) branch first."""
        a, b, c = self.quad_p2, self.quad_p1, self.quad_p0
        scale = max(abs(a), abs(b), abs(c), 1.0)
        if abs(a) <= 1e-14 * scale:
            if abs(b) <= 1e-14 * scale:
                return ()
            return (-c / b,)
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            return ()
        sq = math.sqrt(disc)
        return ((-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a))


def gram_identity_residual(dots) -> float:
    """Coplanarity defect of three unit vectors from their pairwise dots.

    d12^2 + d13^2 + d23^2 - 2 d12 d13 d23 - 1: zero exactly when the three
    unit vectors are coplanar (vanishing Gram determinant).
    """
    d12, d13, d23 = (float(x) for x in dots)
    for d in (d12, d13, d23):
        if abs(d) > 1.0 + 1e-9:
            raise ValueError(f"dot product {d!r} outside [-1, 1]")
    return d12 ** 2 + d13 ** 2 + d23 ** 2 - 2.0 * d12 * d13 * d23 - 1.0


def lambdas_three_state(dots, scaled_priors) -> tuple:
    """Multipliers of the interior three-state solution from two routes.

    Both algebraic triples are evaluated; they agree exactly when the dots
    satisfy the coplanarity identity, so a disagreement beyond 1e-8 raises
    GramConsistencyError instead of returning one arbitrarily. Vanishing
    denominators (collinear conjugates) raise DegenerateGeometryError:
    that geometry belongs to the boundary candidates, not this formula.
    """
    d12, d13, d23 = (float(x) for x in dots)
    t1, t2, t3 = (float(x) for x in scaled_priors)
    den_a = 2.0 * (1.0 + d12 - d13 - d23)
    den_b = 1.0 - d12
    den_2 = 2.0 * (
        2.0 * d12 * d13 * d23 - d13 * d23 - d12 * d23
        - d12 ** 2 - d13 ** 2 + d12 + d13
    )
    if min(abs(den_a), abs(den_b), abs(den_2)) < 1e-12:
        raise DegenerateGeometryError(
            f"degenerate multiplier denominators for dots ({d12}, {d13}, {d23})"
        )
    first = (
        (1.0 - t1) * (d12 * d23 - d13) / (den_a * den_b),
        (1.0 - t2) * (d12 * d13 - d23) / (den_a * den_b),
        (1.0 - t3) * (1.0 + d12) / den_a,
    )
    second = (
        (1.0 - t1) * (d23 ** 2 - 1.0) / den_2,
        (1.0 - t2) * (d12 - d13 * d23) / den_2,
        (1.0 - t3) * (d13 - d12 * d23) / den_2,
    )
    gap = max(abs(a - b) for a, b in zip(first, second))
    if gap > 1e-8:
        raise GramConsistencyError(
            f"multiplier triples disagree by {gap!r}; dots are not coplanar"
        )
    return first


def _boundary_candidate(ensemble: WeightedEnsemble, i: int, j: int):
    """Pair (i, j) pure and balanced, third conjugate mixed, third element zero."""
    pr = ensemble.priors
    q = ensemble.weighted_points
    k = ({0, 1, 2} - {i, j}).pop()
    d = q[j] - q[i]
    dn = float(np.linalg.norm(d))
    if dn <= 1e-15:
        return None
    p = 0.5 * (pr[i] + pr[j] + dn)
    if p < pr.max() - 1e-15 or p <= pr[k] + 1e-12:
        return None
    ci = d / (2.0 * p - pr[i] - pr[j])
    r = q[i] + (p - pr[i]) * ci
    ck = (r - q[k]) / (p - pr[k])
    if float(np.linalg.norm(ck)) > 1.0 + PURITY_TOL:
        return None
    conj = np.zeros((3, 3))
    conj[i], conj[j], conj[k] = ci, -ci, ck
    weights = np.zeros(3)
    weights[i] = weights[j] = 1.0
    try:
        return assemble_result(
            ensemble,
            p,
            BlochVector.from_array(r),
            [BlochVector.from_array(row) for row in conj],
            povm_from_weights(weights, conj),
            "three-state-boundary",
        )
    except (CertificateError, ValueError):
        return None


def _interior_candidate(ensemble: WeightedEnsemble, p: float):
    """All three conjugates pure at ratio p (a root of the quadratic)."""
    pr = ensemble.priors
    q = ensemble.weighted_points
    s = p - pr
    if not np.isfinite(p) or p > 1.0 + 1e-12 or s.min() <= 1e-12:
        return None
    coeffs = ThreeStateCoefficients.from_ensemble(ensemble)
    gaps = (coeffs.dist12_sq, coeffs.dist13_sq, coeffs.dist23_sq)
    pairs = ((0, 1), (0, 2), (1, 2))
    dots = []
    for (a, b), g in zip(pairs, gaps):
        dots.append((s[a] ** 2 + s[b] ** 2 - g) / (2.0 * s[a] * s[b]))
    if max(abs(d) for d in dots) > 1.0 + PURITY_TOL:
        return None
    try:
        lam = lambdas_three_state(dots, pr / p)
    except (DegenerateGeometryError, GramConsistencyError):
        return None
    if min(lam) < -1e-10:
        return None
    # common point: two in-plane linear equations from differencing the
    # squared-distance constraints |r - q_i| = p - p_i
    e2 = q[1] - q[0]
    e3 = q[2] - q[0]
    lhs = np.vstack([2.0 * e2, 2.0 * e3])
    rhs = np.array(
        [float(e2 @ e2) + s[0] ** 2 - s[1] ** 2, float(e3 @ e3) + s[0] ** 2 - s[2] ** 2]
    )
    sol, _, rank, _ = np.linalg.lstsq(lhs, rhs, rcond=None)
    if rank < 2:
        return None
    r = q[0] + sol
    conj = (r - q) / s[:, None]
    weights = 4.0 * p * np.asarray(lam) / s
    if weights.min() < -1e-10:
        return None
    try:
        return assemble_result(
            ensemble,
            p,
            BlochVector.from_array(r),
            [BlochVector.from_array(row) for row in conj],
            povm_from_weights(np.clip(weights, 0.0, None), conj),
            "three-state-interior",
            lambdas=lam,
        )
    except (CertificateError, ValueError):
        return None


def solve_three_state(ensemble: WeightedEnsemble) -> DiscriminationResult:
    """Enumerate three boundary candidates and two interior roots; validate all.

    Selection is by (p, candidate index); any candidate that survives the
    full certificate suite is a verified optimum of its own branch, and the
    smallest valid ratio is the answer. When nothing validates (e.g. the
    guess regime, where no formula candidate exists), the minimax oracle
    solves the instance and the result is tagged method="oracle".
    """
    if ensemble.n != 3:
        raise ValueError(f"solve_three_state needs exactly 3 states, got {ensemble.n}")
    candidates = []
    for idx, (i, j) in enumerate(((0, 1), (0, 2), (1, 2))):
        built = _boundary_candidate(ensemble, i, j)
        if built is not None:
            candidates.append((built.p_opt, idx, built))
    for offset, root in enumerate(ThreeStateCoefficients.from_ensemble(ensemble).roots()):
        built = _interior_candidate(ensemble, float(root))
        if built is not None:
            candidates.append((built.p_opt, 3 + offset, built))
    if not candidates:
        return solve_oracle(ensemble)
    candidates.sort(key=lambda item: (item[0], item[1]))
    return candidates[0][2]


# ---------------------------------------------------------------------------
# diagonal ensembles


def solve_diagonal(ensemble: WeightedEnsemble) -> DiscriminationResult:
    """States on the z axis: best up-projector index plus best down-projector index.

    Enumerates ordered pairs (u, d); the winner takes Pi_u = |0><0| (the
    larger p_i b_iz) and Pi_d = |1><1|, everything else zero. When a single
    index dominates every pair, that is the guess regime.
    """
    b = ensemble.bloch_matrix
    if np.abs(b[:, :2]).max() > 1e-12:
        raise ValueError("solve_diagonal needs every Bloch vector on the z axis")
    pr = ensemble.priors
    n = ensemble.n
    z = b[:, 2]
    up = pr * (1.0 + z) / 2.0
    down = pr * (1.0 - z) / 2.0

    # same candidate grid as the classical two-outcome maximum, so the
    # winning value is bit-identical to max_i up_i + max_j down_j
    best_val = -np.inf
    best = None
    for u in range(n):
        for d in range(n):
            if u == d:
                continue
            val = up[u] + down[d]
            if val > best_val:
                best_val, best = val, (u, d)
    for k in range(n):
        val = up[k] + down[k]
        if val > best_val:
            best_val, best = val, (k, k)

    u, d = best
    if u == d:
        return guess_result(ensemble, u, "diagonal", value=best_val)

    p = float(best_val)
    q = ensemble.weighted_points
    conj = np.zeros((n, 3))
    conj[u, 2] = -1.0
    conj[d, 2] = 1.0
    r = q[d] + (p - pr[d]) * np.array([0.0, 0.0, 1.0])
    for k in range(n):
        if k in (u, d):
            continue
        gap = p - pr[k]
        if gap <= 1e-15:
            # a tied prior can only be covered if its point already sits at r
            if float(np.linalg.norm(r - q[k])) > 1e-9:
                raise CertificateError(f"diagonal tie at index {k} cannot be certified")
            continue
        conj[k] = (r - q[k]) / gap
    weights = np.zeros(n)
    weights[u] = weights[d] = 1.0
    return assemble_result(
        ensemble,
        p,
        BlochVector.from_array(r),
        [BlochVector.from_array(row) for row in conj],
        povm_from_weights(weights, conj),
        "diagonal",
    )


# ---------------------------------------------------------------------------
# symmetric shell and cone


def solve_symmetric_shell(ensemble: WeightedEnsemble) -> DiscriminationResult:
    """Equiprobable states of a common Bloch norm b: p_opt = (1 + b)/N.

    Conjugates point oppositely to the states, c_j = -b_j/b, and the
    measurement weights solve the completeness system over those
    directions; infeasibility (all states inside an open half-space) means
    the shell assumption fails and the caller should fall back to the
    oracle. b = 0 degenerates to guessing among identical mixed states,
    reported with an arbitrary planar conjugate fan.
    """
    pr = ensemble.priors
    n = ensemble.n
    if np.abs(pr - 1.0 / n).max() > 1e-12:
        raise ValueError("solve_symmetric_shell needs equiprobable priors")
    b_rows = ensemble.bloch_matrix
    norms = np.linalg.norm(b_rows, axis=1)
    b = float(norms.mean())
    if np.abs(norms - b).max() > PURITY_TOL:
        raise ValueError("solve_symmetric_shell needs a common Bloch norm")

    p = (1.0 + b) / n
    if b <= 1e-12:
        phis = 2.0 * np.pi * np.arange(n) / n
        conj = np.column_stack([np.cos(phis), np.sin(phis), np.zeros(n)])
    else:
        conj = -b_rows / b
    w = min_norm_nonneg_weights(conj, total=2.0)
    q = ensemble.weighted_points
    r = q[0] + (p - pr[0]) * conj[0]
    return assemble_result(
        ensemble,
        p,
        BlochVector.from_array(r),
        [BlochVector.from_array(row) for row in conj],
        povm_from_weights(w, conj),
        "symmetric-shell",
    )


def cone_ensemble(n: int, b: float, theta: float, phis=None) -> WeightedEnsemble:
    """Equiprobable states at polar angle theta, Bloch norm b, given azimuths."""
    if n < 2:
        raise ValueError("cone needs at least 2 states")
    if not (0.0 <= b <= 1.0):
        raise ValueError(f"Bloch norm b = {b!r} outside [0, 1]")
    if not (0.0 <= theta <= np.pi):
        raise ValueError(f"polar angle theta = {theta!r} outside [0, pi]")
    phis = (
        2.0 * np.pi * np.arange(n) / n
        if phis is None
        else np.asarray([float(x) for x in phis])
    )
    if phis.shape != (n,):
        raise ValueError(f"expected {n} azimuths, got {phis.shape}")
    st, ct = math.sin(theta), math.cos(theta)
    entries = tuple(
        (1.0 / n, QubitState(BlochVector(b * st * math.cos(f), b * st * math.sin(f), b * ct)))
        for f in phis
    )
    return WeightedEnsemble(entries)


def _solve_cone_assembled(
    ensemble: WeightedEnsemble, b: float, theta: float, phis: np.ndarray
) -> DiscriminationResult:
    n = ensemble.n
    p = (1.0 + b * math.sin(theta)) / n
    planar = np.column_stack([np.cos(phis), np.sin(phis)])
    w = min_norm_nonneg_weights(planar, total=2.0)
    conj = np.column_stack([-np.cos(phis), -np.sin(phis), np.zeros(n)])
    q = ensemble.weighted_points
    r = q[0] + (p - ensemble.priors[0]) * conj[0]
    return assemble_result(
        ensemble,
        p,
        BlochVector.from_array(r),
        [BlochVector.from_array(row) for row in conj],
        povm_from_weights(w, conj),
        "cone",
    )


def solve_cone(n: int, b: float, theta: float, phis=None) -> DiscriminationResult:
    """p_opt = (1 + b sin(theta))/N for a cone of equiprobable states.

    Conjugates sit on the equator opposite each azimuth. Feasibility of the
    planar weight system (0 inside the convex hull of the azimuth
    directions) is required; otherwise WeightSystemInfeasible propagates so
    the caller can fall back to the oracle.
    """
    ensemble = cone_ensemble(n, b, theta, phis)
    used = (
        2.0 * np.pi * np.arange(n) / n
        if phis is None
        else np.asarray([float(x) for x in phis])
    )
    return _solve_cone_assembled(ensemble, b, theta, used)


def _cone_structure(ensemble: WeightedEnsemble):
    """(b, theta, phis) when all states share one norm and one polar angle."""
    pr = ensemble.priors
    n = ensemble.n
    if np.abs(pr - 1.0 / n).max() > 1e-12:
        return None
    rows = ensemble.bloch_matrix
    norms = np.linalg.norm(rows, axis=1)
    b = float(norms.mean())
    if np.abs(norms - b).max() > PURITY_TOL:
        return None
    if b <= 1e-12:
        return 0.0, 0.5 * np.pi, 2.0 * np.pi * np.arange(n) / n
    z = rows[:, 2]
    if z.max() - z.min() > 1e-9:
        return None
    rho = np.linalg.norm(rows[:, :2], axis=1)
    theta = math.atan2(float(rho.mean()), float(z.mean()))
    if rho.max() <= 1e-12:
        phis = 2.0 * np.pi * np.arange(n) / n
    else:
        phis = np.arctan2(rows[:, 1], rows[:, 0])
    return b, theta, phis


# ---------------------------------------------------------------------------
# mirror-symmetric triple


def mirror_ensemble(theta: float, p1: float) -> WeightedEnsemble:
    """Two states at Bloch azimuth 0 tilted by +-2theta from +z, plus +z itself."""
    if not (0.0 < theta < 0.5 * np.pi):
        raise ValueError(f"theta = {theta!r} outside (0, pi/2)")
    if not (0.0 < p1 < 0.5):
        raise ValueError(f"p1 = {p1!r} outside (0, 1/2)")
    s, c = math.sin(2.0 * theta), math.cos(2.0 * theta)
    return WeightedEnsemble(
        (
            (p1, QubitState(BlochVector(s, 0.0, c))),
            (p1, QubitState(BlochVector(-s, 0.0, c))),
            (1.0 - 2.0 * p1, QubitState(BlochVector(0.0, 0.0, 1.0))),
        )
    )


def mirror_threshold(theta: float) -> float:
    """The prior at which the two mirror-symmetric regimes exchange validity."""
    c, s = math.cos(theta), math.sin(theta)
    return 1.0 / (2.0 + c * (s + c))


@dataclass(frozen=True)
class MirrorRegime:
    """Both closed-form candidate values for the mirror-symmetric triple."""

    threshold: float
    pair_value: float      # two pure conjugates, third element zero
    interior_value: float  # all three conjugates pure
    regime: str            # "boundary" above threshold, "interior" below
    reference_p: float     # the value of the regime named above


def mirror_regime(theta: float, p1: float) -> MirrorRegime:
    if not (0.0 < theta < 0.5 * np.pi) or not (0.0 < p1 < 0.5):
        raise ValueError("mirror_regime parameters out of range")
    s2, c, s = math.sin(2.0 * theta), math.cos(theta), math.sin(theta)
    pair_value = p1 * (1.0 + s2)
    p3 = 1.0 - 2.0 * p1
    interior_value = p3 * (p1 * s ** 2 + p3 - p1 * c ** 2) / (p3 - p1 * c ** 2)
    thr = mirror_threshold(theta)
    regime = "boundary" if p1 >= thr else "interior"
    return MirrorRegime(
        threshold=thr,
        pair_value=pair_value,
        interior_value=interior_value,
        regime=regime,
        reference_p=pair_value if regime == "boundary" else interior_value,
    )


def solve_mirror_symmetric(theta: float, p1: float) -> DiscriminationResult:
    """Solve the mirror-symmetric triple via the general three-state machinery.

    Both closed-form candidates are members of the general candidate set
    (the pair value is the boundary candidate of states 1 and 2; the other
    is the interior quadratic root), so validation picks the correct regime
    without trusting any regime inequality. Result is retagged
    mirror-symmetric unless the oracle fallback fired.
    """
    result = solve_three_state(mirror_ensemble(theta, p1))
    if result.method.startswith("three-state"):
        return replace(result, method="mirror-symmetric")
    return result


# ---------------------------------------------------------------------------
# dispatch


def solve_auto(ensemble: WeightedEnsemble, tol: float = 1e-10, seed: int = 0) -> DiscriminationResult:
    """Route an ensemble to the most specific applicable solver.

    Order: two states; diagonal (N >= 3 on the z axis); general three
    states; cone structure; symmetric shell; minimax oracle. Structural
    solvers that fail feasibility fall through to the oracle.
    """
    n = ensemble.n
    if n == 2:
        return solve_two_state(ensemble)
    if np.abs(ensemble.bloch_matrix[:, :2]).max() <= 1e-12:
        return solve_diagonal(ensemble)
    if n == 3:
        return solve_three_state(ensemble)
    structure = _cone_structure(ensemble)
    if structure is not None:
        b, theta, phis = structure
        try:
            return _solve_cone_assembled(ensemble, b, theta, phis)
        except (WeightSystemInfeasible, CertificateError, DegenerateRatioError):
            pass
    try:
        return solve_symmetric_shell(ensemble)
    except (ValueError, WeightSystemInfeasible, CertificateError, DegenerateRatioError):
        pass
    return solve_oracle(ensemble, tol=tol, seed=seed)
