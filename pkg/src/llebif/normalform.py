"""Bifurcation bases, Taylor multilinear forms, and normal-form coefficients.

Every coefficient is available through two independent routes:

* ``coeffs_closed`` evaluates the closed-form coefficient expressions on the
  bifurcation curve (pump level recomputed internally from the curve
  relation), with the guaranteed signs self-checked;
* ``coeffs_numeric`` assembles the same numbers from scratch: explicit basis
  vectors, polarized quadratic/cubic forms, linear solves for the quadratic
  response vectors, and Hermitian projections onto the adjoint vector.

Agreement of the two routes is the package's central cross-check.
The Hermitian product convention is <u, v> = sum_j u_j * conj(v_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NearSingular, SignViolation, WrongClass
from .linearization import (
    REVERSOR,
    BifurcationClass,
    build_L,
    classify,
    curve_point,
)
from .model import SQRT3, Equilibrium, Params

__all__ = [
    "TaylorForms",
    "IOmega2Basis",
    "O2IOmegaBasis",
    "O2Basis",
    "CorrectionVectors",
    "IOmega2Coefficients",
    "O2IOmegaCoefficients",
    "O2Coefficients",
    "hermitian",
    "taylor_forms",
    "build_basis",
    "solve_phi_iomega2",
    "coeffs_closed",
    "coeffs_numeric",
    "normalize_case",
]


def hermitian(u: np.ndarray, v: np.ndarray) -> complex:
    """Hermitian product with conjugation on the second slot."""
    return complex(np.sum(np.asarray(u) * np.conj(np.asarray(v))))


@dataclass(frozen=True)
class TaylorForms:
    """Graded pieces of the nonlinearity about an equilibrium.

    The bilinear and trilinear maps are produced by polarizing the diagonal
    quadratic/cubic parts, so the diagonal restriction reproduces them
    exactly and symmetry holds by construction.  All maps extend to complex
    vectors by linearity.
    """

    beta: int
    psi_r: float
    psi_i: float

    def R01(self) -> np.ndarray:
        return self.beta * np.array([0.0, -self.psi_r, 0.0, -self.psi_i])

    def R11(self, u: np.ndarray) -> np.ndarray:
        z = np.zeros_like(np.asarray(u))
        return self.beta * np.stack([z[0], -u[0], z[0], -u[2]])

    def _quadratic(self, u: np.ndarray) -> np.ndarray:
        pr, pi = self.psi_r, self.psi_i
        z = np.zeros_like(u[0])
        return self.beta * np.stack(
            [
                z,
                3.0 * pr * u[0] * u[0] + 2.0 * pi * u[0] * u[2] + pr * u[2] * u[2],
                z,
                pi * u[0] * u[0] + 2.0 * pr * u[0] * u[2] + 3.0 * pi * u[2] * u[2],
            ]
        )

    def _cubic(self, u: np.ndarray) -> np.ndarray:
        z = np.zeros_like(u[0])
        return self.beta * np.stack(
            [
                z,
                u[0] ** 3 + u[0] * u[2] * u[2],
                z,
                u[2] ** 3 + u[0] * u[0] * u[2],
            ]
        )

    def R20(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        u = np.asarray(u)
        v = np.asarray(v)
        return 0.25 * (self._quadratic(u + v) - self._quadratic(u - v))

    def R30(self, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        u = np.asarray(u)
        v = np.asarray(v)
        w = np.asarray(w)
        c = self._cubic
        return (
            c(u + v + w)
            - c(u + v)
            - c(v + w)
            - c(u + w)
            + c(u)
            + c(v)
            + c(w)
        ) / 6.0


def taylor_forms(params: Params, eq: Equilibrium) -> TaylorForms:
    return TaylorForms(params.beta, eq.psi_r, eq.psi_i)


@dataclass(frozen=True)
class IOmega2Basis:
    zeta0: np.ndarray
    zeta1: np.ndarray
    zeta1_star: np.ndarray
    C: float
    omega: float


@dataclass(frozen=True)
class O2IOmegaBasis:
    zeta0: np.ndarray
    zeta1: np.ndarray
    zeta: np.ndarray
    zeta1_star: np.ndarray
    D: float
    omega: float


@dataclass(frozen=True)
class O2Basis:
    zeta0: np.ndarray
    zeta1: np.ndarray
    zeta0_star: np.ndarray
    zeta1_star: np.ndarray
    D: float


def _kind_of(bif_class: BifurcationClass | str) -> str:
    kind = bif_class.kind if isinstance(bif_class, BifurcationClass) else bif_class
    mapping = {"IOmega2": "iomega2", "O2IOmega": "o2iomega", "O2": "o2"}
    if kind in mapping:
        return mapping[kind]
    if kind in mapping.values():
        return kind
    raise DomainError(f"no basis for class {kind!r}")


def _require_class(kind: str, params: Params, eq: Equilibrium, tol: float) -> None:
    actual = classify(params, eq, tol)
    if _kind_of_or_none(actual.kind) != kind:
        raise WrongClass(f"requested {kind}, spectrum classifies as {actual}")


def _kind_of_or_none(kind: str) -> str | None:
    try:
        return _kind_of(kind)
    except DomainError:
        return None


def _solve_adjoint(rows: list[np.ndarray], rhs: np.ndarray) -> np.ndarray:
    """Solve <row_j, v> = rhs_j for v (linear after conjugation)."""
    M = np.conj(np.stack(rows))
    return np.conj(np.linalg.solve(np.conj(M), np.conj(rhs)))


def _fold_quantities(params: Params, eq: Equilibrium) -> tuple[float, float]:
    pr, pi = eq.psi_r, eq.psi_i
    D = (3.0 * pr * pr + pi * pi - params.alpha) / (1.0 - 2.0 * pr * pi)
    omega_sq = params.beta * (2.0 * params.alpha - 4.0 * eq.rho)
    return D, omega_sq


def build_basis(
    bif_class: BifurcationClass | str,
    params: Params,
    eq: Equilibrium,
    tol: float = 1e-8,
    verify: bool = True,
):
    """Explicit basis vectors of the requested class at this equilibrium.

    The vectors are the fixed normalized ones (not an arbitrary eigenbasis);
    the coefficient formulas depend on this normalization.  When ``verify``
    is set, adjoint vectors are independently recomputed from their defining
    linear conditions and matched against the explicit forms to 1e-10.
    """
    kind = _kind_of(bif_class)
    _require_class(kind, params, eq, tol)
    pr, pi = eq.psi_r, eq.psi_i
    alpha = params.alpha

    if kind == "iomega2":
        omega = math.sqrt(params.beta * (alpha - 2.0))
        C = alpha / (2.0 - alpha)
        s = pr * pi
        zeta0 = np.array([C, 1j * omega * C, 1.0, 1j * omega])
        if params.beta == 1:
            zeta1 = np.array(
                [
                    2j * omega / (1.0 + 2.0 * s),
                    C - 2.0 * omega * omega / (1.0 + 2.0 * s),
                    0.0,
                    1.0,
                ]
            )
        else:
            zeta1 = np.array(
                [
                    -2j * omega / (1.0 + 2.0 * s),
                    C + 2.0 * omega * omega / (1.0 + 2.0 * s),
                    0.0,
                    1.0,
                ]
            )
        zeta1_star = (2.0 - alpha) / (4.0 * params.F2) * np.array(
            [-1j * omega, 1.0, 1j * omega * C, -C]
        )
        if verify:
            numeric = _solve_adjoint(
                [zeta0, np.conj(zeta0), zeta1, np.conj(zeta1)],
                np.array([0.0, 0.0, 1.0, 0.0]),
            )
            _match(numeric, zeta1_star, "iomega2 adjoint")
            L = build_L(params, eq)
            _check(np.max(np.abs(L.T @ zeta1_star + 1j * omega * zeta1_star)), "L* z1*")
            _check(np.max(np.abs(REVERSOR @ zeta1_star + np.conj(zeta1_star))), "S z1*")
        return IOmega2Basis(zeta0, zeta1, zeta1_star, C, omega)

    D, omega_sq = _fold_quantities(params, eq)
    zeta0 = np.array([1.0, 0.0, D, 0.0])
    zeta1 = np.array([0.0, 1.0, 0.0, D])
    zeta1_star = np.array([0.0, 0.0, 0.0, 1.0]) / D

    if kind == "o2iomega":
        omega = math.sqrt(omega_sq)
        zeta = np.array([1.0, 1j * omega, 0.0, 0.0])
        if verify:
            L = build_L(params, eq)
            numeric = _kernel_adjoint(L, zeta1)
            _match(numeric, zeta1_star, "o2iomega adjoint")
        return O2IOmegaBasis(zeta0, zeta1, zeta, zeta1_star, D, omega)

    zeta0_star = np.array([0.0, 0.0, 1.0, 0.0]) / D
    if verify:
        L = build_L(params, eq)
        numeric = _kernel_adjoint(L, zeta1)
        _match(numeric, zeta1_star, "o2 adjoint")
        w, *_ = np.linalg.lstsq(L.T, zeta1_star, rcond=None)
        _match(w, zeta0_star, "o2 generalized adjoint")
    return O2Basis(zeta0, zeta1, zeta0_star, zeta1_star, D)


def _kernel_adjoint(L: np.ndarray, zeta1: np.ndarray) -> np.ndarray:
    """Kernel vector of L^T normalized against zeta1."""
    _, s, vt = np.linalg.svd(L.T)
    v = vt[-1]
    if s[-2] < 1e-10:
        raise NearSingular("adjoint kernel is not one-dimensional")
    return v / hermitian(zeta1, v).conjugate()


def _match(numeric: np.ndarray, closed: np.ndarray, label: str, tol: float = 1e-10):
    defect = np.max(np.abs(np.asarray(numeric) - np.asarray(closed)))
    if defect > tol:
        raise NearSingular(f"{label}: numeric/closed-form mismatch {defect:.3e}")


def _check(value: float, label: str, tol: float = 1e-10):
    if value > tol:
        raise NearSingular(f"{label}: defining condition defect {value:.3e}")


@dataclass(frozen=True)
class CorrectionVectors:
    """Quadratic-response vectors of the double imaginary pair reduction.

    ``mu_term`` solves the parameter response, ``second_harmonic`` the
    2*i*omega quadratic response, ``mean_shift`` the rectified (zero-frequency)
    quadratic response.
    """

    mu_term: np.ndarray
    second_harmonic: np.ndarray
    mean_shift: np.ndarray


def _guarded_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    if np.linalg.cond(A) > 1e12:
        raise NearSingular("linear solve condition number exceeds 1e12")
    return np.linalg.solve(A, b)


def solve_phi_iomega2(
    params: Params,
    eq: Equilibrium,
    basis: IOmega2Basis,
    forms: TaylorForms,
) -> CorrectionVectors:
    """Solve the three linear systems feeding the coefficient projections."""
    L = build_L(params, eq)
    z0 = basis.zeta0
    mu_term = _guarded_solve(L, -forms.R01())
    second_harmonic = _guarded_solve(
        L.astype(complex) - 2j * basis.omega * np.eye(4),
        -forms.R20(z0, z0),
    )
    mean_shift = _guarded_solve(L, -2.0 * forms.R20(z0, np.conj(z0)).real)
    return CorrectionVectors(mu_term, second_harmonic, mean_shift)


@dataclass(frozen=True)
class IOmega2Coefficients:
    a2: float
    b2: float
    method: str

    def as_dict(self) -> dict[str, float]:
        return {"a2": self.a2, "b2": self.b2}


@dataclass(frozen=True)
class O2IOmegaCoefficients:
    a1: float
    b1: float
    c1: float
    method: str

    def as_dict(self) -> dict[str, float]:
        return {"a1": self.a1, "b1": self.b1, "c1": self.c1}


@dataclass(frozen=True)
class O2Coefficients:
    a: float
    b: float
    method: str

    def as_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b}


def normalize_case(kind: str, beta: int, case: str | None) -> str:
    """Resolve a case tag to ``fold-plus`` or ``fold-minus``.

    Numeric aliases follow the per-class enumerations: for the classes with
    two sub-cases, case 1 is the fold-plus branch and case 2 the fold-minus
    branch.  Classes with a single branch accept ``None``.
    """
    kind = _kind_of(kind)
    if kind == "iomega2":
        if case not in (None, "", "rho1", "iomega2"):
            raise DomainError("the double imaginary pair class has no case tag")
        return "iomega2"
    aliases = {"1": "fold-plus", "2": "fold-minus"}
    if case in aliases:
        case = aliases[case]
    if kind == "o2iomega":
        if beta == 1:
            if case in (None, "", "fold-plus"):
                return "fold-plus"
            raise DomainError("normal dispersion o2iomega exists on fold-plus only")
        if case in ("fold-plus", "fold-minus"):
            return case
        raise DomainError("anomalous o2iomega needs case fold-plus or fold-minus")
    # o2
    if beta == 1:
        if case in ("fold-plus", "fold-minus"):
            return case
        raise DomainError("normal-dispersion o2 needs case fold-plus or fold-minus")
    if case in (None, "", "fold-plus"):
        return "fold-plus"
    raise DomainError("anomalous o2 exists on fold-plus only")


def _validity(kind: str, beta: int, case: str, alpha_star: float) -> None:
    if kind == "iomega2":
        if beta == 1 and not alpha_star > 2.0:
            raise DomainError("normal-dispersion double pair requires alpha* > 2")
        if beta == -1 and not alpha_star < 2.0:
            raise DomainError("anomalous double pair requires alpha* < 2")
        return
    if not alpha_star > SQRT3:
        raise DomainError("fold-based classes require alpha* > sqrt(3)")
    if kind == "o2iomega":
        if beta == 1 and not alpha_star > 2.0:
            raise DomainError("normal o2iomega requires alpha* > 2")
        if beta == -1 and case == "fold-plus" and not alpha_star < 2.0:
            raise DomainError("anomalous fold-plus o2iomega requires alpha* < 2")
        return
    if beta == 1 and case == "fold-plus" and not alpha_star < 2.0:
        raise DomainError("normal fold-plus o2 requires alpha* < 2")
    if beta == -1 and not alpha_star > 2.0:
        raise DomainError("anomalous o2 requires alpha* > 2")


def _sign_check(name: str, value: float, sign: int, tol: float = 1e-12):
    if sign > 0 and value < -tol:
        raise SignViolation(f"{name} = {value} should be positive")
    if sign < 0 and value > tol:
        raise SignViolation(f"{name} = {value} should be negative")


def _fold_closed(beta: int, case: str, alpha: float) -> tuple[float, float, float]:
    """(a1, b1, c1) closed forms on a fold; the o2 pair is (a1, b1)."""
    g = math.sqrt(alpha * alpha - 3.0)
    F2 = curve_point(beta, case, alpha)[0].F2
    F = math.sqrt(F2)
    if case == "fold-plus":
        d = alpha**3 - 9.0 * alpha + (alpha * alpha + 6.0) * g
        n = 2.0 * alpha**5 - 18.0 * alpha + (2.0 * alpha**4 + 3.0 * alpha**2 + 9.0) * g
        q = alpha * alpha + 3.0 + alpha * g
    else:
        d = alpha**3 - 9.0 * alpha - (alpha * alpha + 6.0) * g
        n = 2.0 * alpha**5 - 18.0 * alpha - (2.0 * alpha**4 + 3.0 * alpha**2 + 9.0) * g
        q = alpha * alpha + 3.0 - alpha * g
    num = alpha + g if case == "fold-plus" else alpha - g
    sgn = float(beta)
    a1 = -sgn * 9.0 * F * num / (2.0 * d)
    b1 = sgn * 3.0 * F * n / (2.0 * q * d)
    c1 = sgn * 9.0 * F * num / d
    return a1, b1, c1


def coeffs_closed(
    kind: str,
    beta: int,
    alpha_star: float,
    case: str | None = None,
):
    """Closed-form coefficients on the named curve, with signs self-checked."""
    kind = _kind_of(kind)
    case = normalize_case(kind, beta, case)
    _validity(kind, beta, case if case != "iomega2" else "", alpha_star)

    if kind == "iomega2":
        F2 = 1.0 + (1.0 - alpha_star) ** 2
        if beta == 1:
            a2 = (alpha_star - 1.0) / (alpha_star - 2.0) ** 3
            b2 = 2.0 * F2 * (41.0 - 30.0 * alpha_star) / (9.0 * (alpha_star - 2.0) ** 5)
            _sign_check("a2", a2, +1)
            _sign_check("b2", b2, -1)
        else:
            a2 = (alpha_star - 1.0) / (2.0 - alpha_star) ** 3
            b2 = 2.0 * F2 * (41.0 - 30.0 * alpha_star) / (9.0 * (2.0 - alpha_star) ** 5)
            _sign_check("a2*(alpha*-1)", a2 * (alpha_star - 1.0), +1)
            _sign_check("b2*(41-30 alpha*)", b2 * (41.0 - 30.0 * alpha_star), +1)
        return IOmega2Coefficients(a2, b2, "closed-form")

    a1, b1, c1 = _fold_closed(beta, case, alpha_star)
    if kind == "o2iomega":
        _sign_check("a1", a1, -1)
        _sign_check("c1", c1, +1)
        if beta == 1 or case == "fold-plus":
            _sign_check("b1", b1, +1)
        else:
            _sign_check("b1", b1, -1)
        return O2IOmegaCoefficients(a1, b1, c1, "closed-form")

    # o2: same reduced quadratic coefficients, evaluated on the o2 case domains
    a, b = a1, b1
    _sign_check("a", a, +1)
    if beta == 1 and case == "fold-minus":
        _sign_check("b", b, +1)
    else:
        _sign_check("b", b, -1)
    return O2Coefficients(a, b, "closed-form")


def _real_part(value: complex, label: str) -> float:
    if abs(value.imag) > 1e-10:
        raise ValueError(f"{label} projection is not real: imag = {value.imag:.3e}")
    return value.real


def coeffs_numeric(
    kind: str,
    params: Params,
    eq: Equilibrium,
    tol: float = 1e-8,
    basis=None,
    forms: TaylorForms | None = None,
):
    """Coefficients assembled from basis vectors, multilinear forms and solves.

    No closed-form shortcut enters this path; it is the independent cross-check
    of ``coeffs_closed``.
    """
    kind = _kind_of(kind)
    if forms is None:
        forms = taylor_forms(params, eq)
    if basis is None:
        basis = build_basis(kind, params, eq, tol)

    if kind == "iomega2":
        phi = solve_phi_iomega2(params, eq, basis, forms)
        z0, z1s = basis.zeta0, basis.zeta1_star
        a2 = hermitian(forms.R11(z0) + 2.0 * forms.R20(z0, phi.mu_term), z1s)
        b2 = hermitian(
            2.0 * forms.R20(z0, phi.mean_shift)
            + 2.0 * forms.R20(np.conj(z0), phi.second_harmonic)
            + 3.0 * forms.R30(z0, z0, np.conj(z0)),
            z1s,
        )
        return IOmega2Coefficients(
            _real_part(a2, "a2"), _real_part(b2, "b2"), "numeric-projection"
        )

    if kind == "o2iomega":
        z0, z, z1s = basis.zeta0, basis.zeta, basis.zeta1_star
        a1 = hermitian(forms.R01(), z1s)
        b1 = hermitian(forms.R20(z0, z0), z1s)
        c1 = hermitian(2.0 * forms.R20(z, np.conj(z)), z1s)
        return O2IOmegaCoefficients(
            _real_part(a1, "a1"),
            _real_part(b1, "b1"),
            _real_part(c1, "c1"),
            "numeric-projection",
        )

    z0, z1s = basis.zeta0, basis.zeta1_star
    a = hermitian(forms.R01(), z1s)
    b = hermitian(forms.R20(z0, z0), z1s)
    return O2Coefficients(
        _real_part(a, "a"), _real_part(b, "b"), "numeric-projection"
    )
