"""Constant solutions of the Lugiato-Lefever equation and the (alpha, F^2) region map.

A constant solution psi = psi_r + i*psi_i satisfies

    i*psi*|psi|^2 - (1 + i*alpha)*psi + F = 0,

which reduces to the real cubic

    rho^3 - 2*alpha*rho^2 + (alpha^2 + 1)*rho - F^2 = 0,    rho = |psi|^2,

with psi recovered from rho through

    psi_r = F / (1 + (rho - alpha)^2),    psi_i = F*(rho - alpha) / (1 + (rho - alpha)^2).

For alpha <= sqrt(3) the cubic is monotone on rho > 0 and there is exactly one
equilibrium for every F > 0.  For alpha > sqrt(3) the fold values rho_{+,-} are
the roots of 3*rho^2 - 4*alpha*rho + alpha^2 + 1 and the corresponding pump
levels F2_{+,-} bound the three-equilibria wedge.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError

__all__ = [
    "SQRT3",
    "Params",
    "Equilibrium",
    "RegionTag",
    "CriticalPoints",
    "equilibrium_from_rho",
    "equilibrium_residual",
    "solve_equilibria",
    "critical_points",
    "classify_region",
]

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Params:
    """Physical knobs: dispersion sign, detuning and pump amplitude."""

    beta: int
    alpha: float
    F: float

    def __post_init__(self):
        if self.beta not in (1, -1):
            raise DomainError(f"beta must be +1 or -1, got {self.beta}")
        if not self.F > 0:
            raise DomainError(f"F must be positive, got {self.F}")

    @property
    def F2(self) -> float:
        return self.F * self.F


@dataclass(frozen=True)
class Equilibrium:
    """A constant solution, stored as (psi_r, psi_i) together with rho = |psi|^2."""

    psi_r: float
    psi_i: float
    rho: float

    @property
    def psi(self) -> complex:
        return complex(self.psi_r, self.psi_i)


class RegionTag(enum.Enum):
    ONE_EQUILIBRIUM = "OneEquilibrium"
    THREE_EQUILIBRIA = "ThreeEquilibria"
    FOLD_UPPER = "FoldUpper"
    FOLD_LOWER = "FoldLower"
    CUSP = "Cusp"


class CriticalPoints(NamedTuple):
    rho_plus: float
    rho_minus: float
    F2_plus: float
    F2_minus: float


def equilibrium_from_rho(params: Params, rho: float) -> Equilibrium:
    """Recover the constant solution with square modulus ``rho``."""
    denom = 1.0 + (rho - params.alpha) ** 2
    return Equilibrium(params.F / denom, params.F * (rho - params.alpha) / denom, rho)


def equilibrium_residual(params: Params, eq: Equilibrium) -> float:
    """Modulus of i*psi*|psi|^2 - (1 + i*alpha)*psi + F at the equilibrium."""
    psi = eq.psi
    return abs(1j * psi * abs(psi) ** 2 - (1.0 + 1j * params.alpha) * psi + params.F)


def _cubic_value(alpha: float, F2: float, rho: float) -> float:
    return ((rho - 2.0 * alpha) * rho + alpha * alpha + 1.0) * rho - F2


def _cubic_derivative(alpha: float, rho: float) -> float:
    return (3.0 * rho - 4.0 * alpha) * rho + alpha * alpha + 1.0


def _newton_polish(alpha: float, F2: float, rho: float) -> float:
    # one guarded step; skipped near critical points where f' degenerates
    d = _cubic_derivative(alpha, rho)
    if abs(d) < 1e-6:
        return rho
    return rho - _cubic_value(alpha, F2, rho) / d


def _cubic_roots(alpha: float, F2: float, multiplicity_tol: float) -> list[float]:
    """All real roots of the equilibrium cubic, repeated with multiplicity, ascending.

    Closed-form (trigonometric / Cardano) solve of
    rho^3 - 2*alpha*rho^2 + (alpha^2 + 1)*rho - F2, followed by one Newton
    polish per simple root.  Double roots are routed through the fold values
    rho_{+,-} whenever the cubic discriminant is within ``multiplicity_tol``
    of zero, so that fold and cusp points come out exactly.
    """
    b = -2.0 * alpha
    c = alpha * alpha + 1.0
    d = -F2
    # depressed form t^3 + p t + q, rho = t - b/3
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    disc = -4.0 * p**3 - 27.0 * q * q

    if abs(disc) <= multiplicity_tol:
        if alpha <= SQRT3:
            # Degenerate discriminant without real critical points can only be
            # the triple root at alpha = sqrt(3); fall through to the generic
            # branches below when the cubic is in fact simple.
            rho_t = 2.0 * alpha / 3.0
            if abs(_cubic_value(alpha, F2, rho_t)) <= multiplicity_tol:
                return [rho_t, rho_t, rho_t]
        else:
            g = math.sqrt(alpha * alpha - 3.0)
            rho_p = (2.0 * alpha - g) / 3.0
            rho_m = (2.0 * alpha + g) / 3.0
            if abs(rho_p - rho_m) <= multiplicity_tol:
                return [rho_p, rho_p, rho_p]
            rho_d = min((rho_p, rho_m), key=lambda r: abs(_cubic_value(alpha, F2, r)))
            if abs(_cubic_value(alpha, F2, rho_d)) <= 1e-7 * max(1.0, F2):
                rho_s = 2.0 * alpha - 2.0 * rho_d
                rho_s = _newton_polish(alpha, F2, rho_s)
                return sorted([rho_d, rho_d, rho_s])

    if disc > 0.0:
        # three distinct real roots, trigonometric form
        m = 2.0 * math.sqrt(-p / 3.0)
        theta = math.acos(min(1.0, max(-1.0, 3.0 * q / (p * m)))) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]
        return sorted(_newton_polish(alpha, F2, r) for r in roots)

    # one real root, Cardano with a cancellation-safe cube root pairing
    s = math.sqrt(max(0.0, q * q / 4.0 + p**3 / 27.0))
    u = -q / 2.0 + s if q <= 0 else -q / 2.0 - s
    cbrt_u = math.copysign(abs(u) ** (1.0 / 3.0), u) if u != 0.0 else 0.0
    t = cbrt_u - p / (3.0 * cbrt_u) if cbrt_u != 0.0 else 0.0
    return [_newton_polish(alpha, F2, t - shift)]


def solve_equilibria(params: Params, multiplicity_tol: float = 1e-9) -> list[Equilibrium]:
    """All constant solutions for the given parameters.

    Roots are returned sorted by ascending rho and repeated with their
    multiplicity (a fold point yields a doubled entry).  The result does not
    depend on the dispersion sign.
    """
    roots = _cubic_roots(params.alpha, params.F2, multiplicity_tol)
    return [equilibrium_from_rho(params, rho) for rho in roots]


def critical_points(alpha: float) -> CriticalPoints:
    """Fold data (rho_plus, rho_minus, F2_plus, F2_minus) for alpha > sqrt(3)."""
    if not alpha > SQRT3:
        raise DomainError(
            f"critical points require alpha > sqrt(3) ~ {SQRT3:.6f}, got {alpha}"
        )
    g = math.sqrt(alpha * alpha - 3.0)
    rho_p = (2.0 * alpha - g) / 3.0
    rho_m = (2.0 * alpha + g) / 3.0
    f2 = lambda rho: rho * (1.0 + (rho - alpha) ** 2)  # noqa: E731
    return CriticalPoints(rho_p, rho_m, f2(rho_p), f2(rho_m))


def classify_region(alpha: float, F2: float, tol: float = 1e-8) -> RegionTag:
    """Place a parameter point in the Figure-2 style region map.

    ``tol`` is measured in F^2 units for the fold bands and applied to both
    coordinates of the cusp test.
    """
    if not F2 > 0:
        raise DomainError(f"F2 must be positive, got {F2}")
    if abs(alpha - 2.0) <= tol and abs(F2 - 2.0) <= tol:
        return RegionTag.CUSP
    if alpha <= SQRT3:
        return RegionTag.ONE_EQUILIBRIUM
    cp = critical_points(alpha)
    if abs(F2 - cp.F2_plus) <= tol:
        return RegionTag.FOLD_UPPER
    if abs(F2 - cp.F2_minus) <= tol:
        return RegionTag.FOLD_LOWER
    if cp.F2_minus < F2 < cp.F2_plus:
        return RegionTag.THREE_EQUILIBRIA
    return RegionTag.ONE_EQUILIBRIUM
