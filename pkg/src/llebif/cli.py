"""Command-line surface: region maps, bifurcation curves, coefficient tables,
profile construction, and the verification suite.

Exit codes: 0 success, 2 configuration or domain error, 3 coefficient
cross-check failure, 4 regime error, 5 verification failure.  All data files
are written with 15 significant digits and no timestamps, so identical
configurations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from .errors import DomainError, PersistenceWarning, RegimeError
from .linearization import bifurcation_curves, curve_point
from .model import Params, classify_region, solve_equilibria
from .normalform import coeffs_closed, coeffs_numeric, normalize_case
from .profiles import construct_iomega2, construct_o2, construct_o2iomega, save_profile
from .verify import (
    DEFAULT_FAMILIES,
    family_builder,
    refine_periodic,
    residual_scaling,
    temporal_spectrum_constant,
    truncated_oracle,
)

_EXIT_OK = 0
_EXIT_CONFIG = 2
_EXIT_CROSSCHECK = 3
_EXIT_REGIME = 4
_EXIT_VERIFY = 5

_REL_TOL = 1e-8
_DEFAULT_MU = (1e-2, 3e-3, 1e-3, 3e-4, 1e-4)


def _fmt(value: float) -> str:
    return f"{value:.15g}"


def _parse_range(text: str, field: str) -> np.ndarray:
    try:
        lo_s, hi_s, n_s = text.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
    except ValueError as exc:
        raise DomainError(f"{field} must look like a:b:n, got {text!r}") from exc
    if n < 1:
        raise DomainError(f"{field} needs at least 1 step, got {n}")
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def _parse_beta(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise DomainError(f"beta must be +1 or -1, got {text!r}")


def _outdir(args) -> Path:
    out = args.out or os.environ.get("LLE_OUT_DIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_lines(path: Path, lines: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_equilibria(args) -> int:
    if args.alpha_range:
        alphas = _parse_range(args.alpha_range, "--alpha-range")
    elif args.alpha is not None:
        alphas = np.array([args.alpha])
    else:
        raise DomainError("--alpha-range or --alpha is required")
    if args.f2_range:
        f2s = _parse_range(args.f2_range, "--f2-range")
    elif args.f2 is not None:
        f2s = np.array([args.f2])
    else:
        raise DomainError("--f2-range or --f2 is required")
    lines = ["alpha,F2,n_equilibria,region_tag"]
    for alpha in alphas:
        for f2 in f2s:
            if f2 <= 0:
                raise DomainError(f"--f2 values must be positive, got {f2}")
            tag = classify_region(float(alpha), float(f2), args.tol)
            eqs = solve_equilibria(Params(1, float(alpha), math.sqrt(float(f2))))
            distinct = len({round(e.rho, 9) for e in eqs})
            lines.append(f"{_fmt(alpha)},{_fmt(f2)},{distinct},{tag.value}")
    path = _outdir(args) / "regions.csv"
    _write_lines(path, lines)
    print(f"wrote {path} ({len(lines) - 1} rows)")
    return _EXIT_OK


def cmd_curves(args) -> int:
    beta = _parse_beta(args.beta)
    if not args.alpha_range:
        raise DomainError("--alpha-range is required")
    alphas = list(_parse_range(args.alpha_range, "--alpha-range"))
    lo, hi = min(alphas), max(alphas)
    if lo <= 2.0 <= hi and not any(abs(a - 2.0) < 1e-14 for a in alphas):
        alphas.append(2.0)
    alphas.sort()
    lines = ["alpha,F2,class,omega"]
    for alpha in alphas:
        for bif, f2, _rho in bifurcation_curves(beta, float(alpha)):
            omega = bif.omega if bif.omega is not None else 0.0
            lines.append(f"{_fmt(alpha)},{_fmt(f2)},{bif.kind},{_fmt(omega)}")
    name = f"curves_{'+1' if beta == 1 else '-1'}.csv"
    path = _outdir(args) / name
    _write_lines(path, lines)
    print(f"wrote {path} ({len(lines) - 1} rows)")
    return _EXIT_OK


def cmd_coeffs(args) -> int:
    beta = _parse_beta(args.beta)
    kind = args.cls
    if args.alpha_range:
        alphas = _parse_range(args.alpha_range, "--alpha-range")
    elif args.alpha_star is not None:
        alphas = np.array([args.alpha_star])
    else:
        raise DomainError("--alpha-star or --alpha-range is required")
    case = normalize_case(kind, beta, args.case)
    lines = ["alpha_star,name,closed,numeric,abs_diff,rel_diff"]
    worst = 0.0
    for alpha in alphas:
        closed = coeffs_closed(kind, beta, float(alpha), case)
        curve = "iomega2" if kind == "iomega2" else case
        params, eq = curve_point(beta, curve, float(alpha))
        numeric = coeffs_numeric(kind, params, eq)
        for name, cval in closed.as_dict().items():
            nval = numeric.as_dict()[name]
            adiff = abs(nval - cval)
            rdiff = adiff / (1.0 + abs(cval))
            worst = max(worst, rdiff)
            lines.append(
                f"{_fmt(alpha)},{name},{_fmt(cval)},{_fmt(nval)},{_fmt(adiff)},{_fmt(rdiff)}"
            )
    path = _outdir(args) / "coeffs.csv"
    _write_lines(path, lines)
    print(f"wrote {path} (worst relative discrepancy {worst:.3e})")
    if worst > _REL_TOL:
        print(f"cross-check FAIL: {worst:.3e} > {_REL_TOL:.1e}", file=sys.stderr)
        return _EXIT_CROSSCHECK
    return _EXIT_OK


def cmd_construct(args) -> int:
    beta = _parse_beta(args.beta)
    kind = args.cls
    if args.family is None:
        raise DomainError("--family is required")
    if args.alpha_star is None:
        raise DomainError("--alpha-star is required")
    if args.mu is None or len(args.mu) != 1:
        raise DomainError("--mu must carry exactly one value for construct")
    mu = args.mu[0]
    branch = None
    if args.branch:
        branch = 1 if args.branch == "+" else -1
    phase = 0.0 if args.phase in (None, "0") else math.pi
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PersistenceWarning)
        if kind == "iomega2":
            profile = construct_iomega2(args.family, beta, args.alpha_star, mu, K=args.K)
        elif kind == "o2iomega":
            profile = construct_o2iomega(
                args.family, beta, args.case, args.alpha_star, mu,
                K=args.K, eps=args.eps, branch=branch, phase=phase,
            )
        else:
            profile = construct_o2(
                args.family, beta, args.case, args.alpha_star, mu, eps=args.eps
            )
    outdir = _outdir(args)
    stem = f"{kind}_{args.family}"
    csv_path = outdir / f"{stem}.csv"
    save_profile(profile, csv_path, outdir / f"{stem}.json")
    amplitude = profile.aux.get("amplitude", float(np.max(np.abs(profile.values - (profile.background or 0)))))
    print(f"wrote {csv_path}")
    print(f"k = {_fmt(profile.k)}")
    print(f"amplitude = {_fmt(amplitude)}")
    print(f"truncation order: {profile.truncation_order}")
    for w in caught:
        if issubclass(w.category, PersistenceWarning):
            print(f"warning: {w.message}")
    return _EXIT_OK


def _verify_report(args) -> tuple[dict, bool]:
    beta_override = args.override_b2
    mu_list = tuple(args.mu) if args.mu else _DEFAULT_MU
    if args.families:
        names: list[str] = []
        for token in args.families.split(","):
            token = token.strip()
            matches = [n for n in DEFAULT_FAMILIES if n == token or n.startswith(token + "-")]
            if not matches:
                raise DomainError(f"unknown family selector {token!r}")
            names.extend(matches)
    else:
        names = list(DEFAULT_FAMILIES)
    report: dict = {"residual_scaling": {}, "pass": True}

    for name in names:
        builder = family_builder(name.strip())
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PersistenceWarning)
            rep = residual_scaling(builder, mu_list, family=name.strip())
        report["residual_scaling"][name.strip()] = {
            "mu": list(rep.mu_list),
            "residual_norms": list(rep.residual_norms),
            "fitted_slope": rep.fitted_slope,
            "pass": rep.passed,
        }
        if not rep.passed:
            report["pass"] = False
            report.setdefault("failures", []).append(
                f"residual slope {rep.fitted_slope:.4f} < 1.0 for {name}"
            )

    if args.oracle:
        xs = np.linspace(-30.0, 30.0, 101)
        co = coeffs_closed("iomega2", 1, 3.0)
        ode_co = co
        if beta_override is not None:
            ode_co = type(co)(co.a2, beta_override, co.method)
        defect = truncated_oracle(
            "iomega2", ode_co, "homoclinic", {"omega": 1.0, "mu": 1e-3}, xs,
            solution_coeffs=co,
        )
        report["truncated_oracle"] = {"iomega2-homoclinic-defect": defect}
        if defect > 1e-10:
            report["pass"] = False
            report.setdefault("failures", []).append(
                f"truncated oracle defect {defect:.3e} > 1e-10"
            )

    if args.refine:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", PersistenceWarning)
            guess = construct_iomega2("periodic", 1, 3.0, 1e-3, K=0.0)
            orbit = refine_periodic(guess)
        report["refine_periodic"] = {
            "half_period": orbit.half_period,
            "newton_iterations": orbit.newton_iterations,
            "defect": orbit.defect,
        }
        if orbit.defect > 1e-10:
            report["pass"] = False
            report.setdefault("failures", []).append("refined orbit defect > 1e-10")

    if args.spectra:
        params = Params(1, 3.0, 2.0)
        eqs = solve_equilibria(params)
        verdicts = [temporal_spectrum_constant(params, eq).verdict for eq in eqs]
        report["temporal_spectra"] = {"rho": [e.rho for e in eqs], "verdicts": verdicts}
        if verdicts != ["Stable", "Unstable", "Stable"]:
            report["pass"] = False
            report.setdefault("failures", []).append(
                f"temporal verdicts {verdicts} != [Stable, Unstable, Stable]"
            )
    return report, report["pass"]


def cmd_verify(args) -> int:
    report, ok = _verify_report(args)
    path = _outdir(args) / "verify_report.json"
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")
    if not ok:
        for line in report.get("failures", []):
            print(f"FAIL: {line}", file=sys.stderr)
        return _EXIT_VERIFY
    print("all verification checks passed")
    return _EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llebif",
        description="Stationary-wave bifurcation analysis at desk scale",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--beta", default="+1", help="dispersion sign, +1 or -1")
        p.add_argument("--alpha-star", type=float, default=None)
        p.add_argument("--alpha-range", default=None, help="a:b:n sweep")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--f2", type=float, default=None)
        p.add_argument("--f2-range", default=None, help="a:b:n sweep")
        p.add_argument("--mu", type=lambda s: [float(v) for v in s.split(",")], default=None)
        p.add_argument("--class", dest="cls", choices=["iomega2", "o2iomega", "o2"], default="iomega2")
        p.add_argument("--case", default=None, help="fold-plus | fold-minus | 1 | 2")
        p.add_argument("--family", default=None)
        p.add_argument("--K", type=float, default=0.0)
        p.add_argument("--eps", type=float, default=0.0)
        p.add_argument("--branch", choices=["+", "-"], default=None)
        p.add_argument("--phase", choices=["0", "pi"], default=None)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        return p

    common(sub.add_parser("equilibria", help="region map data (Figure-2 style)"))
    common(sub.add_parser("curves", help="codimension-1 curve data (Figure-3 style)"))
    common(sub.add_parser("coeffs", help="closed-form vs numeric coefficient table"))
    common(sub.add_parser("construct", help="sample a solution profile"))
    p_verify = common(sub.add_parser("verify", help="run the verification suite"))
    p_verify.add_argument("--families", default=None, help="comma list of family names")
    p_verify.add_argument("--refine", action="store_true")
    p_verify.add_argument("--oracle", action="store_true")
    p_verify.add_argument("--spectra", action="store_true")
    p_verify.add_argument("--override-b2", type=float, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_CONFIG if exc.code not in (0, None) else 0
    handlers = {
        "equilibria": cmd_equilibria,
        "curves": cmd_curves,
        "coeffs": cmd_coeffs,
        "construct": cmd_construct,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except RegimeError as exc:
        print(f"regime error: {exc}", file=sys.stderr)
        return _EXIT_REGIME
    except DomainError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return _EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
