"""Leading-order stationary-wave profiles for every solution family.

Constructors sample the expansion formulas of the three codimension-1 classes
on symmetric grids.  All profiles are even in x (reversible through x = 0) and
keep a callable form of their formula so verification can re-evaluate them on
refined grids.

Grid policy: periodic families get a fixed number of full periods sampled
commensurately; localized families get a symmetric window wide enough that
the envelope tail at the endpoints is below ``GridSpec.tail_target`` (with a
floor of 12 decay lengths).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DomainError, PersistenceWarning, RegimeError
from .linearization import curve_point
from .model import Params
from .normalform import coeffs_closed, normalize_case

__all__ = [
    "GridSpec",
    "SolutionProfile",
    "construct_iomega2",
    "construct_o2iomega",
    "construct_o2",
    "save_profile",
]


@dataclass(frozen=True)
class GridSpec:
    """Sampling control: point count, periods for periodic families, and the
    endpoint tail target (or an explicit half width) for localized ones."""

    n: int = 4096
    periods: int = 16
    half_width: float | None = None
    tail_target: float = 1e-9

    def __post_init__(self):
        if self.n < 64:
            raise DomainError("grid needs at least 64 samples")
        if self.periods < 1:
            raise DomainError("periodic grids need at least one period")


@dataclass(frozen=True)
class SolutionProfile:
    """A sampled approximate stationary wave plus its construction metadata."""

    family: str
    beta: int
    alpha_star: float
    mu: float
    params: Params  # alpha = alpha_star + mu, F = F* of the curve point
    k: float  # wavenumber of the oscillatory factor, 0 if none
    x: np.ndarray
    values: np.ndarray
    truncation_order: str
    aux: dict = field(default_factory=dict)
    background: complex | None = None
    formula: Callable[[np.ndarray], np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        if self.formula is None:
            raise RegimeError("profile has no formula", "cannot re-evaluate")
        return self.formula(np.asarray(x, dtype=float))

    def with_values(self, values: np.ndarray) -> "SolutionProfile":
        """Copy with replaced samples (drops the formula; used by mutation tests)."""
        return replace(self, values=np.asarray(values), formula=None)


def _periodic_grid(k: float, spec: GridSpec) -> np.ndarray:
    length = spec.periods * 2.0 * math.pi / k
    return -0.5 * length + np.arange(spec.n) * (length / spec.n)


def _localized_grid(decay: float, amp_scale: float, spec: GridSpec) -> np.ndarray:
    if spec.half_width is not None:
        half = spec.half_width
    else:
        half = max(12.0, math.log(2.0 * amp_scale / spec.tail_target + 1.0)) / decay
    return np.linspace(-half, half, spec.n)


def _constant_grid(spec: GridSpec) -> np.ndarray:
    return np.linspace(-20.0, 20.0, spec.n)


def _phase_sign(phase) -> float:
    if isinstance(phase, str):
        phase = {"0": 0.0, "pi": math.pi}.get(phase.strip())
        if phase is None:
            raise DomainError("phase must be 0 or pi")
    if abs(phase) <= 1e-12:
        return 1.0
    if abs(phase - math.pi) <= 1e-12:
        return -1.0
    raise DomainError("phase must be 0 or pi")


def _make(family, params_star, mu, k, x, formula, order, aux, background=None):
    params = Params(params_star.beta, params_star.alpha + mu, params_star.F)
    return SolutionProfile(
        family=family,
        beta=params_star.beta,
        alpha_star=params_star.alpha,
        mu=mu,
        params=params,
        k=k,
        x=x,
        values=formula(x),
        truncation_order=order,
        aux=aux,
        background=background,
        formula=formula,
    )


def construct_iomega2(
    kind: str,
    beta: int,
    alpha_star: float,
    mu: float,
    K: float = 0.0,
    grid: GridSpec | None = None,
    second_term_denominator: str = "single",
) -> SolutionProfile:
    """Families of the double imaginary pair: periodic, bright sech pulse,
    and (anomalous dispersion only) the dark tanh front.

    ``second_term_denominator`` selects the denominator of the bright pulse's
    second-order term: ``"single"`` for 1 + psi_r*psi_i (default) or
    ``"double"`` for 1 + 2*psi_r*psi_i, the weight used by every other
    reconstruction factor.  Leading order is unaffected either way.
    """
    grid = grid or GridSpec()
    co = coeffs_closed("iomega2", beta, alpha_star)
    a2, b2 = co.a2, co.b2
    params_star, eq = curve_point(beta, "iomega2", alpha_star)
    psis = eq.psi
    omega = math.sqrt(beta * (alpha_star - 2.0))
    C = alpha_star / (2.0 - alpha_star)
    s = eq.psi_r * eq.psi_i

    if kind == "periodic":
        rad = (-a2 * mu - K * K) / b2
        if not rad > 0.0:
            raise RegimeError("(-a2*mu - K^2)/b2 > 0", f"value {rad:.3e}")
        k = omega + K
        if not k > 0.0:
            raise RegimeError("omega* + K > 0", f"value {k:.3e}")
        r = math.sqrt(rad)
        coef = complex(C - 2.0 * omega * K / (1.0 + 2.0 * s), 1.0)

        def formula(x):
            return psis + 2.0 * r * coef * np.cos(k * x)

        return _make(
            "iomega2/periodic", params_star, mu, k,
            _periodic_grid(k, grid), formula, "O(mu)",
            {"K": K, "curve": "iomega2", "amplitude": 2.0 * r},
        )

    if kind == "homoclinic":
        if not a2 * mu > 0.0:
            raise RegimeError("a2*mu > 0", f"value {a2 * mu:.3e}")
        if not b2 < 0.0:
            raise RegimeError("b2 < 0", f"value {b2:.3e}")
        dec = math.sqrt(a2 * mu)
        env = 2.0 * math.sqrt(-2.0 * a2 / b2) * math.sqrt(mu)
        if second_term_denominator == "single":
            denom = 1.0 + s
        elif second_term_denominator == "double":
            denom = 1.0 + 2.0 * s
        else:
            raise DomainError("second_term_denominator must be single or double")
        c2nd = (4.0 * omega / denom) * math.sqrt(-2.0 / b2) * a2 * mu

        def formula(x):
            sech = 1.0 / np.cosh(dec * x)
            return (
                psis
                + complex(C, 1.0) * env * sech * np.cos(omega * x)
                + c2nd * np.tanh(dec * x) * sech * np.sin(omega * x)
            )

        return _make(
            "iomega2/homoclinic", params_star, mu, omega,
            _localized_grid(dec, env * abs(complex(C, 1.0)), grid),
            formula, "O(mu^(3/2))",
            {"curve": "iomega2", "decay": dec, "amplitude": env},
            background=psis,
        )

    if kind == "dark-front":
        if beta != -1:
            raise RegimeError("beta == -1", "dark front exists for anomalous dispersion")
        if not b2 > 0.0:
            raise RegimeError("b2 > 0", f"value {b2:.3e}")
        if not a2 * mu < 0.0:
            raise RegimeError("a2*mu < 0", f"value {a2 * mu:.3e}")
        c = math.sqrt(-a2 * mu / 2.0)
        r = math.sqrt(-a2 * mu / b2)
        c2nd = (4.0 * omega / (1.0 + 2.0 * s)) * (-a2 * mu / math.sqrt(2.0 * b2))

        def formula(x):
            ax = np.abs(x)
            return (
                psis
                + complex(C, 1.0) * 2.0 * r * np.tanh(c * ax) * np.cos(omega * x)
                + c2nd * np.sign(x) / np.cosh(c * x) ** 2 * np.sin(omega * x)
            )

        return _make(
            "iomega2/dark-front", params_star, mu, omega,
            _localized_grid(2.0 * c, 2.0 * r * abs(complex(C, 1.0)), grid),
            formula, "O(|mu|^(3/2))",
            # the two half-orbits are glued at x = 0, so the profile has a
            # derivative jump there by construction
            {"curve": "iomega2", "decay": c, "amplitude": 2.0 * r, "kink_at_zero": True},
        )

    raise DomainError(f"unknown iomega2 family {kind!r}")


def construct_o2iomega(
    kind: str,
    beta: int,
    case: str | None,
    alpha_star: float,
    mu: float,
    K: float = 0.0,
    eps: float = 0.0,
    branch: int | None = None,
    phase=0.0,
    grid: GridSpec | None = None,
    k_min: float | None = None,
) -> SolutionProfile:
    """Families of the fold coexisting with an imaginary pair.

    ``branch`` selects the sign of the slow core amplitude; the default is
    the saddle-side branch (the one that exactly solves the truncated system)
    for the homoclinic-to-periodic family and + for the others.  ``phase``
    in {0, pi} picks the sign of the fast 2*sqrt(K)*cos component.
    ``k_min`` is the persistence floor (default |mu|); orbits constructed
    below it carry a PersistenceWarning.
    """
    grid = grid or GridSpec()
    case = normalize_case("o2iomega", beta, case)
    co = coeffs_closed("o2iomega", beta, alpha_star, case)
    a1, b1, c1 = co.a1, co.b1, co.c1
    params_star, eq = curve_point(beta, case, alpha_star)
    psis = eq.psi
    pr, pi_ = eq.psi_r, eq.psi_i
    D = (3.0 * pr * pr + pi_ * pi_ - alpha_star) / (1.0 - 2.0 * pr * pi_)
    omega = math.sqrt(beta * (2.0 * alpha_star - 4.0 * eq.rho))
    direction = complex(1.0, D)
    aux_common = {"curve": case, "D": D}

    def equilibrium_radicand() -> float:
        rad = -a1 * mu / b1
        if not rad > 0.0:
            raise RegimeError("-a1*mu/b1 > 0", f"value {rad:.3e}")
        return rad

    if kind in ("equilibrium-plus", "equilibrium-minus"):
        A0 = math.sqrt(equilibrium_radicand())
        A = A0 if kind.endswith("plus") else -A0
        value = psis + direction * A

        def formula(x):
            return np.full_like(x, value, dtype=complex)

        return _make(
            f"o2iomega/{kind}", params_star, mu, 0.0,
            _constant_grid(grid), formula, "O(mu)",
            {**aux_common, "offset": A}, background=value,
        )

    if kind == "first-kind":
        if K < 0.0:
            raise RegimeError("K >= 0", f"value {K:.3e}")
        rad = (-a1 * mu - c1 * K) / b1
        if not rad > 0.0:
            raise RegimeError("(-a1*mu - c1*K)/b1 > 0", f"value {rad:.3e}")
        AK = math.sqrt(rad)
        A = (branch if branch is not None else 1) * AK
        sgn = _phase_sign(phase)
        offset = psis + direction * A
        amp = 2.0 * math.sqrt(K)

        def formula(x):
            return offset + sgn * amp * np.cos(omega * x)

        return _make(
            "o2iomega/first-kind", params_star, mu, omega,
            _periodic_grid(omega, grid), formula, "O(mu)",
            {**aux_common, "K": K, "branch": 1 if A >= 0 else -1, "amplitude": amp},
        )

    if kind == "second-kind":
        A0 = math.sqrt(equilibrium_radicand())
        Ac = -math.copysign(A0, b1)
        kk = math.sqrt(2.0) * (-a1 * b1 * mu) ** 0.25

        def formula(x):
            return psis + direction * (Ac + eps * math.sqrt(abs(mu)) * np.cos(kk * x))

        return _make(
            "o2iomega/second-kind", params_star, mu, kk,
            _periodic_grid(kk, grid), formula, "O(mu + eps*(eps + mu))",
            {**aux_common, "eps": eps, "center": Ac},
        )

    if kind == "homoclinic-to-periodic":
        if K < 0.0:
            raise RegimeError("K >= 0", f"value {K:.3e}")
        rad = (-a1 * mu - c1 * K) / b1
        if not rad > 0.0:
            raise RegimeError("(-a1*mu - c1*K)/b1 > 0", f"value {rad:.3e}")
        AK = math.sqrt(rad)
        core = (branch * AK) if branch is not None else math.copysign(AK, b1)
        delta = math.sqrt(abs(b1 * AK) / 2.0)
        sgn = _phase_sign(phase)
        amp = 2.0 * math.sqrt(K)
        floor = abs(mu) if k_min is None else k_min
        if K < floor:
            warnings.warn(
                f"K = {K:.3e} below persistence floor {floor:.3e}; the orbit is "
                "not guaranteed to persist",
                PersistenceWarning,
                stacklevel=2,
            )

        def formula(x):
            sech2 = 1.0 / np.cosh(delta * x) ** 2
            return (
                psis
                + direction * core * (1.0 - 3.0 * sech2)
                + sgn * amp * np.cos(omega * x)
            )

        return _make(
            "o2iomega/homoclinic-to-periodic", params_star, mu, omega,
            _localized_grid(delta, 3.0 * abs(core) * abs(direction) + amp, grid),
            formula, "O(mu)",
            {**aux_common, "K": K, "branch": 1 if core >= 0 else -1, "decay": delta},
            background=psis + direction * core,
        )

    raise DomainError(f"unknown o2iomega family {kind!r}")


def construct_o2(
    kind: str,
    beta: int,
    case: str | None,
    alpha_star: float,
    mu: float,
    eps: float = 0.0,
    grid: GridSpec | None = None,
) -> SolutionProfile:
    """Families of the pure fold: equilibria, planar periodic orbits, and the
    sech^2 homoclinic loop around the saddle."""
    grid = grid or GridSpec()
    case = normalize_case("o2", beta, case)
    co = coeffs_closed("o2", beta, alpha_star, case)
    a, b = co.a, co.b
    params_star, eq = curve_point(beta, case, alpha_star)
    psis = eq.psi
    pr, pi_ = eq.psi_r, eq.psi_i
    D = (3.0 * pr * pr + pi_ * pi_ - alpha_star) / (1.0 - 2.0 * pr * pi_)
    direction = complex(1.0, D)
    aux_common = {"curve": case, "D": D}

    rad0 = -a * mu / b
    if not rad0 > 0.0:
        raise RegimeError(
            "-a*mu/b > 0",
            f"value {rad0:.3e} (no bounded solution for this sign of mu)",
        )
    A0 = math.sqrt(rad0)
    saddle = math.copysign(A0, b)
    center = -saddle

    if kind in ("equilibrium-plus", "equilibrium-minus"):
        A = A0 if kind.endswith("plus") else -A0
        value = psis + direction * A

        def formula(x):
            return np.full_like(x, value, dtype=complex)

        return _make(
            f"o2/{kind}", params_star, mu, 0.0,
            _constant_grid(grid), formula, "O(mu)",
            {**aux_common, "offset": A}, background=value,
        )

    if kind == "periodic":
        kk = math.sqrt(2.0) * (-a * b * mu) ** 0.25

        def formula(x):
            return psis + direction * (center + eps * math.sqrt(abs(mu)) * np.cos(kk * x))

        return _make(
            "o2/periodic", params_star, mu, kk,
            _periodic_grid(kk, grid), formula, "O(mu + eps*(eps + mu))",
            {**aux_common, "eps": eps, "center": center},
        )

    if kind == "homoclinic":
        delta = math.sqrt(abs(b) * A0 / 2.0)

        def formula(x):
            return psis + direction * saddle * (1.0 - 3.0 / np.cosh(delta * x) ** 2)

        return _make(
            "o2/homoclinic", params_star, mu, 0.0,
            _localized_grid(delta, 3.0 * A0 * abs(direction), grid),
            formula, "O(mu)",
            {**aux_common, "decay": delta, "saddle": saddle},
            background=psis + direction * saddle,
        )

    raise DomainError(f"unknown o2 family {kind!r}")


def save_profile(profile: SolutionProfile, csv_path, sidecar_path=None) -> None:
    """Write the samples as ``x,psi_re,psi_im`` CSV plus a JSON sidecar."""
    lines = ["x,psi_re,psi_im"]
    for x, v in zip(profile.x, profile.values):
        lines.append(f"{x:.15g},{v.real:.15g},{v.imag:.15g}")
    with open(csv_path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    meta = {
        "family": profile.family,
        "beta": profile.beta,
        "alpha_star": profile.alpha_star,
        "mu": profile.mu,
        "k": profile.k,
        "truncation_order": profile.truncation_order,
    }
    for key in ("K", "eps", "branch", "curve"):
        if key in profile.aux:
            meta[key] = profile.aux[key]
    if sidecar_path is None:
        sidecar_path = str(csv_path) + ".json" if not str(csv_path).endswith(".csv") else str(csv_path)[:-4] + ".json"
    with open(sidecar_path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
