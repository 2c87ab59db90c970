"""Spatial-dynamics formulation about an equilibrium: matrix, spectrum, classes.

The stationary equation, written for the deviation (u1, u2, u3, u4) =
(psi_r~, psi_r~', psi_i~, psi_i~'), is the reversible system

    dU/dx = L U + R(U, mu),        S = diag(1, -1, 1, -1),

whose linear part has the block characteristic polynomial

    X^4 - T X^2 + Delta,   T = beta*(4*rho - 2*alpha),
                           Delta = 3*rho^2 - 4*alpha*rho + alpha^2 + 1.

The biquadratic discriminant collapses to T^2 - 4*Delta = 4*(rho^2 - 1),
which makes the double-pair locus rho = 1 exactly representable and keeps the
closed-form eigenvalues clean at the bifurcation curves.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousClassification, DomainError
from .model import (
    SQRT3,
    Equilibrium,
    Params,
    critical_points,
    equilibrium_from_rho,
)

__all__ = [
    "REVERSOR",
    "BifurcationClass",
    "SpectrumReport",
    "SpatialSystem",
    "build_L",
    "spatial_spectrum",
    "classify",
    "bifurcation_curves",
    "curve_point",
    "check_reversibility",
]

REVERSOR = np.diag([1.0, -1.0, 1.0, -1.0])


@dataclass(frozen=True)
class BifurcationClass:
    """Spectrum class tag; ``omega`` is set for the classes that carry one."""

    kind: str  # Hyperbolic | EllipticNoBif | IOmega2 | O2IOmega | O2 | O4
    omega: float | None = None

    def __str__(self) -> str:
        if self.omega is None:
            return self.kind
        return f"{self.kind}(omega={self.omega:.12g})"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[complex, complex, complex, complex]
    trace_coeff: float
    det_coeff: float
    bif_class: BifurcationClass


def _blocks(params: Params, eq: Equilibrium) -> tuple[float, float, float, float]:
    pr, pi = eq.psi_r, eq.psi_i
    a = params.alpha
    return (
        3.0 * pr * pr + pi * pi - a,
        2.0 * pr * pi - 1.0,
        2.0 * pr * pi + 1.0,
        pr * pr + 3.0 * pi * pi - a,
    )


def build_L(params: Params, eq: Equilibrium) -> np.ndarray:
    """The 4x4 spatial matrix; rows 1 and 3 are structural (0,1,0,0)/(0,0,0,1)."""
    c11, c12, c21, c22 = _blocks(params, eq)
    b = float(params.beta)
    return np.array(
        [
            [0.0, 1.0, 0.0, 0.0],
            [b * c11, 0.0, b * c12, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [b * c21, 0.0, b * c22, 0.0],
        ]
    )


def _coefficients(params: Params, eq: Equilibrium) -> tuple[float, float, float]:
    """(T, Delta, disc) of the biquadratic, with disc = 4*(rho^2 - 1) exactly."""
    rho, a = eq.rho, params.alpha
    T = params.beta * (4.0 * rho - 2.0 * a)
    delta = 3.0 * rho * rho - 4.0 * a * rho + a * a + 1.0
    disc = 4.0 * (rho * rho - 1.0)
    return T, delta, disc


def _eigenvalues(T: float, disc: float) -> tuple[complex, complex, complex, complex]:
    root = cmath.sqrt(complex(disc))
    y_plus = (T + root) / 2.0
    y_minus = (T - root) / 2.0
    xp = cmath.sqrt(y_plus)
    xm = cmath.sqrt(y_minus)
    return (xp, -xp, xm, -xm)


def classify(params: Params, eq: Equilibrium, tol: float = 1e-8) -> BifurcationClass:
    """Classify the purely-imaginary part of the spectrum.

    ``tol`` gates |Delta| for the zero-eigenvalue classes, |T| for the
    quadruple-zero corner, and the double-pair test through the exact
    discriminant 4*(rho^2 - 1).  Points with imaginary eigenvalues but no
    degeneracy (simple pairs, including the saddle-center wedge between the
    folds) report EllipticNoBif.
    """
    T, delta, disc = _coefficients(params, eq)
    if not (math.isfinite(T) and math.isfinite(delta)):
        raise AmbiguousClassification(f"non-finite spectrum data: T={T}, Delta={delta}")
    if abs(delta) <= tol:
        if abs(T) <= tol:
            return BifurcationClass("O4")
        if T < 0.0:
            return BifurcationClass("O2IOmega", math.sqrt(-T))
        return BifurcationClass("O2")
    if delta < 0.0:
        # one real and one imaginary simple pair (saddle-center)
        return BifurcationClass("EllipticNoBif")
    if abs(disc) <= tol:
        if T < 0.0:
            return BifurcationClass("IOmega2", math.sqrt(-T / 2.0))
        return BifurcationClass("Hyperbolic")
    if disc < 0.0:
        return BifurcationClass("Hyperbolic")
    if T < 0.0:
        return BifurcationClass("EllipticNoBif")
    return BifurcationClass("Hyperbolic")


def spatial_spectrum(params: Params, eq: Equilibrium, tol: float = 1e-8) -> SpectrumReport:
    """Closed-form eigenvalues plus classification, validated against the matrix.

    T and Delta are cross-checked against the trace and determinant of the
    reduced 2x2 block of ``build_L`` to 1e-12 at construction.
    """
    T, delta, disc = _coefficients(params, eq)
    L = build_L(params, eq)
    reduced = np.array([[L[1, 0], L[1, 2]], [L[3, 0], L[3, 2]]])
    t_mat = reduced[0, 0] + reduced[1, 1]
    d_mat = reduced[0, 0] * reduced[1, 1] - reduced[0, 1] * reduced[1, 0]
    scale = 1.0 + abs(T) + abs(delta)
    if abs(t_mat - T) > 1e-12 * scale or abs(d_mat - delta) > 1e-12 * scale:
        raise AmbiguousClassification(
            f"matrix/closed-form mismatch: T {T} vs {t_mat}, Delta {delta} vs {d_mat}"
        )
    return SpectrumReport(_eigenvalues(T, disc), T, delta, classify(params, eq, tol))


def curve_point(beta: int, curve: str, alpha_star: float) -> tuple[Params, Equilibrium]:
    """Parameters and equilibrium on a named codimension-1 curve.

    ``curve`` is one of ``iomega2`` (the rho = 1 line F^2 = 1 + (1-alpha)^2),
    ``fold-plus`` (F^2_+, rho_+) or ``fold-minus`` (F^2_-, rho_-).
    """
    if curve == "iomega2":
        F2 = 1.0 + (1.0 - alpha_star) ** 2
        rho = 1.0
    elif curve in ("fold-plus", "fold-minus"):
        cp = critical_points(alpha_star)
        if curve == "fold-plus":
            rho, F2 = cp.rho_plus, cp.F2_plus
        else:
            rho, F2 = cp.rho_minus, cp.F2_minus
    else:
        raise DomainError(f"unknown curve {curve!r}")
    params = Params(beta, alpha_star, math.sqrt(F2))
    return params, equilibrium_from_rho(params, rho)


def bifurcation_curves(
    beta: int, alpha: float, tol: float = 1e-8
) -> list[tuple[BifurcationClass, float, float]]:
    """Every codimension-1 curve passing through this alpha for this beta.

    Entries are (class, F2, rho): the rho = 1 line whenever beta*(alpha-2) > 0,
    then the fold-plus and fold-minus branches for alpha > sqrt(3), classified
    by the sign of T there (the alpha = 2 fold point comes out as O4).
    """
    if beta not in (1, -1):
        raise DomainError(f"beta must be +1 or -1, got {beta}")
    out: list[tuple[BifurcationClass, float, float]] = []
    if beta * (alpha - 2.0) > 0.0:
        omega = math.sqrt(beta * (alpha - 2.0))
        out.append((BifurcationClass("IOmega2", omega), 1.0 + (1.0 - alpha) ** 2, 1.0))
    if alpha > SQRT3:
        cp = critical_points(alpha)
        for rho, F2 in ((cp.rho_plus, cp.F2_plus), (cp.rho_minus, cp.F2_minus)):
            T = beta * (4.0 * rho - 2.0 * alpha)
            if abs(T) <= tol:
                out.append((BifurcationClass("O4"), F2, rho))
            elif T < 0.0:
                out.append((BifurcationClass("O2IOmega", math.sqrt(-T)), F2, rho))
            else:
                out.append((BifurcationClass("O2"), F2, rho))
    return out


class SpatialSystem:
    """The reversible system dU/dx = L U + R(U, mu) about a fixed equilibrium.

    ``rhs`` works on plain float 4-tuples so fixed-step integration stays cheap;
    ``nonlinearity`` exposes R as an array for the algebraic identity checks.
    """

    def __init__(self, params: Params, eq: Equilibrium):
        self.params = params
        self.eq = eq
        self.L = build_L(params, eq)
        c11, c12, c21, c22 = _blocks(params, eq)
        b = float(params.beta)
        self._c = (b * c11, b * c12, b * c21, b * c22)
        self._pr = eq.psi_r
        self._pi = eq.psi_i
        self._b = b

    def field_constants(self) -> tuple[float, ...]:
        """(b*c11, b*c12, b*c21, b*c22, psi_r, psi_i, beta) for inlined steppers."""
        return (*self._c, self._pr, self._pi, self._b)

    def rhs(self, u, mu: float):
        u1, u2, u3, u4 = u
        bc11, bc12, bc21, bc22 = self._c
        pr, pi, b = self._pr, self._pi, self._b
        f2 = b * (
            u1 * (u1 * u1 + u3 * u3)
            + 3.0 * pr * u1 * u1
            + 2.0 * pi * u1 * u3
            + pr * u3 * u3
            - mu * (u1 + pr)
        )
        f4 = b * (
            u3 * (u3 * u3 + u1 * u1)
            + pi * u1 * u1
            + 2.0 * pr * u1 * u3
            + 3.0 * pi * u3 * u3
            - mu * (u3 + pi)
        )
        return (u2, bc11 * u1 + bc12 * u3 + f2, u4, bc21 * u1 + bc22 * u3 + f4)

    def nonlinearity(self, u: np.ndarray, mu: float) -> np.ndarray:
        linear = self.L @ np.asarray(u, dtype=float)
        full = np.asarray(self.rhs(tuple(np.asarray(u, dtype=float)), mu))
        return full - linear

    def max_growth_rate(self) -> float:
        """Largest |Re X| over the spectrum of L (controls shooting stiffness)."""
        T, _, disc = _coefficients(self.params, self.eq)
        return max(abs(x.real) for x in _eigenvalues(T, disc))


def check_reversibility(
    params: Params,
    eq: Equilibrium,
    n_samples: int = 100,
    seed: int = 0,
    L: np.ndarray | None = None,
) -> float:
    """Largest defect of the anticommutation identities on random samples.

    Checks L S U = -S L U and R(S U, mu) = -S R(U, mu) for ``n_samples``
    random U in the unit ball and small random mu.  Because the
    anticommutation holds structurally for any matrix with this sparsity
    pattern, the supplied matrix is additionally checked against the linear
    part of the vector field itself, so a corrupted entry cannot hide.
    ``L`` may be supplied explicitly for exactly that kind of harness test.
    """
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1")
    system = SpatialSystem(params, eq)
    mat = system.L if L is None else np.asarray(L, dtype=float)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        u = rng.standard_normal(4)
        norm = np.linalg.norm(u)
        if norm > 1.0:
            u /= norm
        mu = rng.uniform(-1e-2, 1e-2)
        lin = np.max(np.abs(mat @ (REVERSOR @ u) + REVERSOR @ (mat @ u)))
        su = REVERSOR @ u
        nl = np.max(
            np.abs(system.nonlinearity(su, mu) + REVERSOR @ system.nonlinearity(u, mu))
        )
        field = np.max(
            np.abs(mat @ u + system.nonlinearity(u, mu) - np.asarray(system.rhs(tuple(u), mu)))
        )
        worst = max(worst, lin, nl, field)
    return worst
