"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "DomainError",
    "AmbiguousClassification",
    "WrongClass",
    "NearSingular",
    "SignViolation",
    "RegimeError",
    "GridTooCoarse",
    "NoConvergence",
    "SingularJacobian",
    "PersistenceWarning",
]


class DomainError(ValueError):
    """Input lies outside the validity range of a formula or operation."""


class AmbiguousClassification(RuntimeError):
    """Spatial eigenvalue pattern fits no known class within tolerance."""


class WrongClass(ValueError):
    """Requested bifurcation class disagrees with the actual spectrum."""


class NearSingular(RuntimeError):
    """A linear solve is too ill-conditioned to trust (cond > 1e12)."""


class SignViolation(RuntimeError):
    """A coefficient contradicts the sign guaranteed in its validity range."""


class RegimeError(ValueError):
    """A solution family was requested outside its existence regime.

    The violated inequality is kept in ``inequality`` for error reporting.
    """

    def __init__(self, inequality: str, detail: str = ""):
        self.inequality = inequality
        msg = inequality if not detail else f"{inequality} violated: {detail}"
        super().__init__(msg)


class GridTooCoarse(RuntimeError):
    """Finite-difference error still above 10% of the residual after refining."""


class NoConvergence(RuntimeError):
    """Newton iteration failed to reach the requested defect."""


class SingularJacobian(RuntimeError):
    """Shooting Jacobian is singular or cannot be evaluated."""


class PersistenceWarning(UserWarning):
    """Orbit constructed below the persistence floor in the coupling K."""
