"""Exception types shared across the package.

Input-shape problems raise plain ValueError from the type constructors;
the classes here mark solver-level failures that callers may want to
catch and route (for example the CLI maps them to exit code 2).
"""


class DiscriminationError(Exception):
    """Base class for solver-level failures."""


class DegenerateRatioError(DiscriminationError):
    """A ratio p did not strictly exceed every prior where the formula needs it."""


class DegenerateGeometryError(DiscriminationError):
    """A denominator collapsed (collinear conjugates, boundary-case geometry)."""


class GramConsistencyError(DiscriminationError):
    """The two multiplier triples disagree: the dot products are not coplanar."""


class WeightSystemInfeasible(DiscriminationError):
    """No nonnegative weights solve sum w = total, sum w_i d_i = 0."""

    def __init__(self, message: str, directions=None):
        super().__init__(message)
        self.directions = directions


class ConvergenceError(DiscriminationError):
    """The minimax oracle could not certify an optimum."""


class CertificateError(DiscriminationError):
    """An assembled solution failed its own verification suite."""
