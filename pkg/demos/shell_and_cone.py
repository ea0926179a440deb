"""Symmetric families: spherical shells, cones, and the Platonic check.

Equiprobable states sharing one Bloch norm b whose directions balance to
zero give p = (1 + b)/N, independent of how the directions are arranged.
Platonic vertex sets are the classic instance. A published table of
circumradius-to-edge coefficients reproduces four of the five solids; the
dodecahedron row contradicts the measured geometry, and the report below
prints both numbers instead of hiding the difference.
"""

import math

from qsd import (
    PlatonicSolid,
    cone_ensemble,
    edge_coefficient_report,
    platonic_ensemble,
    solve_cone,
    solve_oracle,
    solve_symmetric_shell,
)

print("platonic shells at circumradius 1  (expected p = 2/N)")
for kind in ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"):
    ensemble, reference = platonic_ensemble(PlatonicSolid(kind))
    result = solve_symmetric_shell(ensemble)
    oracle = solve_oracle(ensemble)
    print(
        f"  {kind:<13} N = {ensemble.n:<3} p = {result.p_opt:.12f}"
        f"  oracle delta = {abs(result.p_opt - oracle.p_opt):.1e}"
    )

print()
print(edge_coefficient_report())

# cones: N equiangular directions at polar angle theta, common norm b
print()
print("four-state cone, b = 0.8, theta = 60 deg")
n, b, theta = 4, 0.8, math.pi / 3.0
result = solve_cone(n, b, theta)
formula = (1.0 + b * math.sin(theta)) / n
print(f"  p_opt     {result.p_opt:.15f}")
print(f"  formula   {formula:.15f}   (1 + b sin theta)/N")
ensemble = cone_ensemble(n, b, theta)
print(f"  oracle    {solve_oracle(ensemble).p_opt:.15f}")
