"""Command-line front end: solve, verify, scan, partner.

Output is machine-readable and byte-deterministic: JSON with floats printed
at 17 significant digits (lossless for doubles), complex numbers as
{"re": ..., "im": ...} objects, CSV with a fixed header and row order.

Exit codes: 0 success, 1 usage or parameter validation, 2 numerical or
verification failure.
"""

from __future__ import annotations

import argparse
import cmath
import dataclasses
import json
import sys
from dataclasses import dataclass

from .analysis import (
    GridSpec,
    Wavefunction,
    default_grid,
    default_residual_sample,
    fd_verify,
    is_pt_symmetric,
    norm_squared,
    residual_sup,
    susy_partner,
)
from .errors import (
    ConvergenceFailureError,
    NumericOverflowError,
    PoleError,
    ValidationError,
)
from .families import (
    EVEN,
    MORSE,
    ODD,
    SEXTIC,
    MorseParams,
    QesModel,
    SexticParams,
    make_morse,
    make_sextic,
)
from .spectrum import QesSolution, ShiftResult, solve_model

SCAN_HEADER = "mu,level,re_base,im_base,re_shifted,im_shifted,shift_im,common_shift_found"

RESIDUAL_TOLERANCE = 1e-10
FD_REFERENCE_N = 2000
FD_REFERENCE_DEFECT = 5e-3


# ---------------------------------------------------------------------------
# deterministic serialization


def format_float(x: float) -> str:
    """17 significant digits: round-trips any double, fixed width-free format."""
    return format(float(x), ".17g")


def to_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, complex):
        return to_json({"re": value.real, "im": value.imag}, indent)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        rows = [f'{pad}  {json.dumps(str(k))}: {to_json(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        rows = [f"{pad}  {to_json(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _fmt_c(c: complex) -> str:
    return f"{c.real:.12g}{c.imag:+.12g}i"


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class LevelReport:
    index: int
    energy_base: complex
    energy_shifted: complex
    phi_coeffs: tuple[complex, ...]
    eigvec_residual: float
    multiplicity: int


@dataclass(frozen=True)
class FdReport:
    grid_n: int
    x_min: float
    x_max: float
    refined: tuple[complex, ...]
    defect: float
    defect_bound: float


@dataclass(frozen=True)
class VerificationReport:
    residual_tolerance: float
    fd: FdReport
    norms: tuple[float, ...] | None
    passed: bool


@dataclass(frozen=True)
class RunReport:
    family: str
    parameters: dict
    two_j: int
    shift: complex
    common_shift_found: bool
    shift_spread: float
    levels: tuple[LevelReport, ...]
    residual_sup: float
    pt_symmetric: bool
    published_comparison: tuple[str, ...]
    verification: VerificationReport | None


def report_to_dict(r: RunReport) -> dict:
    out = {
        "family": r.family,
        "parameters": dict(r.parameters),
        "two_j": r.two_j,
        "shift": r.shift,
        "common_shift_found": r.common_shift_found,
        "shift_spread": r.shift_spread,
        "levels": [
            {
                "index": lv.index,
                "energy_base": lv.energy_base,
                "energy_shifted": lv.energy_shifted,
                "phi_coeffs": list(lv.phi_coeffs),
                "eigvec_residual": lv.eigvec_residual,
                "multiplicity": lv.multiplicity,
            }
            for lv in r.levels
        ],
        "residual_sup": r.residual_sup,
        "pt_symmetric": r.pt_symmetric,
        "published_comparison": list(r.published_comparison),
        "verification": None,
    }
    if r.verification is not None:
        v = r.verification
        out["verification"] = {
            "residual_tolerance": v.residual_tolerance,
            "fd": {
                "grid_n": v.fd.grid_n,
                "x_min": v.fd.x_min,
                "x_max": v.fd.x_max,
                "refined": list(v.fd.refined),
                "defect": v.fd.defect,
                "defect_bound": v.fd.defect_bound,
            },
            "norms": None if v.norms is None else list(v.norms),
            "passed": v.passed,
        }
    return out


def _maybe_complex(value):
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(value["re"], value["im"])
    return value


def report_from_dict(data: dict) -> RunReport:
    levels = tuple(
        LevelReport(
            index=lv["index"],
            energy_base=_maybe_complex(lv["energy_base"]),
            energy_shifted=_maybe_complex(lv["energy_shifted"]),
            phi_coeffs=tuple(_maybe_complex(c) for c in lv["phi_coeffs"]),
            eigvec_residual=lv["eigvec_residual"],
            multiplicity=lv["multiplicity"],
        )
        for lv in data["levels"]
    )
    verification = None
    if data["verification"] is not None:
        v = data["verification"]
        verification = VerificationReport(
            residual_tolerance=v["residual_tolerance"],
            fd=FdReport(
                grid_n=v["fd"]["grid_n"],
                x_min=v["fd"]["x_min"],
                x_max=v["fd"]["x_max"],
                refined=tuple(_maybe_complex(c) for c in v["fd"]["refined"]),
                defect=v["fd"]["defect"],
                defect_bound=v["fd"]["defect_bound"],
            ),
            norms=None if v["norms"] is None else tuple(v["norms"]),
            passed=v["passed"],
        )
    return RunReport(
        family=data["family"],
        parameters={k: _maybe_complex(v) for k, v in data["parameters"].items()},
        two_j=data["two_j"],
        shift=_maybe_complex(data["shift"]),
        common_shift_found=data["common_shift_found"],
        shift_spread=data["shift_spread"],
        levels=levels,
        residual_sup=data["residual_sup"],
        pt_symmetric=data["pt_symmetric"],
        published_comparison=tuple(data["published_comparison"]),
        verification=verification,
    )


def render_report(r: RunReport) -> str:
    return to_json(report_to_dict(r))


# ---------------------------------------------------------------------------
# published closed-form comparison (populated for the four mu-parameterized
# reference configurations; the solver output is always the one reported)


def published_comparison(
    model: QesModel, solutions: list[QesSolution], shift_result: ShiftResult
) -> tuple[str, ...]:
    mu = model.params.mu
    if mu is None:
        return ()
    notes: list[str] = []
    two_j = model.params.two_j

    def verdict(delta: float, tol: float = 1e-9) -> str:
        return "AGREES" if delta <= tol else "DISAGREES"

    if model.family == SEXTIC and model.params.sector == EVEN and two_j == 0:
        shifted = solutions[0].energy_shifted
        delta = abs(shifted)
        notes.append(
            f"published level E = 0: computed shifted eigenvalue {_fmt_c(shifted)}, "
            f"|delta| = {delta:.3g} -> {verdict(delta)}"
        )
        if mu != 0.0:
            notes.append(
                "published additive potential constant +i*mu has the opposite sign of the "
                f"computed real-spectrum shift {_fmt_c(solutions[0].shift)}; adjudicated as a "
                "sign misprint, the computed shift is reported"
            )
        notes.append(
            "published ground-state profile exp(-x^4/4 - i*mu*x^2/2) matches the gauge factor"
        )
    elif model.family == SEXTIC and model.params.sector == EVEN and two_j == 1:
        root = cmath.sqrt(2.0 - mu * mu)
        published = sorted((-2.0 * root, 2.0 * root), key=lambda c: (c.real, c.imag))
        computed = [s.energy_shifted for s in solutions]
        delta = max(abs(c - p) for c, p in zip(computed, published))
        notes.append(
            "published levels -/+ 2*sqrt(2-mu^2) = "
            f"[{_fmt_c(published[0])}, {_fmt_c(published[1])}]: max |delta| vs computed "
            f"shifted spectrum = {delta:.3g} -> {verdict(delta)}"
        )
        shift_delta = abs(solutions[0].shift - complex(0.0, -3.0 * mu))
        notes.append(
            f"published additive potential constant -3*i*mu: computed shift "
            f"{_fmt_c(solutions[0].shift)}, |delta| = {shift_delta:.3g} -> {verdict(shift_delta)}"
        )
        if mu != 0.0:
            published_c1 = -(root - complex(0.0, mu))
            upper = max(solutions, key=lambda s: (s.energy_shifted.real, s.energy_shifted.imag))
            computed_c1 = upper.phi_coeffs.coeffs[1] if len(upper.phi_coeffs.coeffs) > 1 else 0.0j
            gap = abs(computed_c1 - published_c1)
            notes.append(
                f"published upper-level coefficient -(sqrt(2-mu^2)-i*mu) = {_fmt_c(published_c1)} "
                f"vs computed {_fmt_c(computed_c1)} = -(sqrt(2-mu^2)+i*mu): |delta| = {gap:.3g} "
                f"-> {verdict(gap)} (null-space result retained)"
            )
    elif model.family == MORSE and two_j == 0:
        a, d = model.params.a, model.params.d
        published_e = 2.0 * a * d - (9.0 - mu * mu) / 4.0
        shifted = solutions[0].energy_shifted
        delta = abs(shifted - published_e)
        notes.append(
            f"published level 2*a*d - (9-mu^2)/4 (misprinted with symbol c for d) = "
            f"{_fmt_c(published_e)}: computed shifted eigenvalue {_fmt_c(shifted)}, "
            f"|delta| = {delta:.3g} -> {verdict(delta)}"
        )
        shift_delta = abs(solutions[0].shift - complex(0.0, -1.5 * mu))
        notes.append(
            f"published additive potential constant -3*i*mu/2: computed shift "
            f"{_fmt_c(solutions[0].shift)}, |delta| = {shift_delta:.3g} -> {verdict(shift_delta)}"
        )
        notes.append(
            "published potential misprints adjudicated: e^x coefficient -d(4-i) read as "
            "-d(4-i*mu), and the final a^2 e^{2x} term read as a^2 e^{-2x}"
        )
    elif model.family == MORSE and two_j == 1:
        a, d = model.params.a, model.params.d
        root = cmath.sqrt(16.0 * a * d - mu * mu)
        base = 2.0 * a * d - (9.0 - mu * mu) / 4.0
        published = sorted((base - root, base + root), key=lambda c: (c.real, c.imag))
        computed = [s.energy_shifted for s in solutions]
        notes.append(
            "published levels 2*a*d - (9-mu^2)/4 -/+ sqrt(16*a*d - mu^2) = "
            f"[{_fmt_c(published[0])}, {_fmt_c(published[1])}]"
        )
        for i, (c, p) in enumerate(zip(computed, published)):
            gap = abs(c - p)
            notes.append(
                f"level {i}: computed {_fmt_c(c)} vs published {_fmt_c(p)}: "
                f"|delta| = {gap:.3g} -> {verdict(gap)}"
            )
        if not shift_result.found:
            notes.append(
                f"imaginary parts of the computed pair differ by {shift_result.spread:.6g}; "
                "no constant shift makes both levels real, so the published real pair is not "
                "reproduced by the block eigenproblem"
            )
        notes.append(
            "with gauge offset b = (i*mu-1)/2 instead of (i*mu-3)/2 the block spectrum is real "
            "with zero shift: 2*a*d - (1-mu^2)/4 -/+ sqrt(16*a*d - mu^2)/2"
        )
    return tuple(notes)


# ---------------------------------------------------------------------------
# report assembly


def _parameters_dict(model: QesModel) -> dict:
    p = model.params
    if model.family == SEXTIC:
        return {"a": p.a, "mu": p.mu, "sector": p.sector}
    return {"a": p.a, "d": p.d, "b": p.b, "mu": p.mu}


def fd_defect_bound(model: QesModel, grid: GridSpec) -> float:
    """Second-order truncation budget, scaled from the reference grid."""
    reference = default_grid(model, FD_REFERENCE_N)
    h_ref = (reference.x_max - reference.x_min) / (reference.n_points + 1)
    h = (grid.x_max - grid.x_min) / (grid.n_points + 1)
    return max(FD_REFERENCE_DEFECT * (h / h_ref) ** 2, 1e-8)


def build_report(
    model: QesModel,
    verify: bool = False,
    grid: GridSpec | None = None,
    inject_energy_error: float = 0.0,
) -> tuple[RunReport, bool]:
    """Solve (and optionally verify) a model; returns the report and pass/fail."""
    solutions, shift_result = solve_model(model)
    if inject_energy_error:
        solutions = [
            dataclasses.replace(
                s,
                energy_base=s.energy_base + inject_energy_error,
                energy_shifted=s.energy_shifted + inject_energy_error,
            )
            for s in solutions
        ]
    sample = default_residual_sample(model)
    rsup = max(residual_sup(Wavefunction(model, s), sample) for s in solutions)
    shift = solutions[0].shift
    pt = is_pt_symmetric(model, shift)
    notes = published_comparison(model, solutions, shift_result)
    levels = tuple(
        LevelReport(
            index=i,
            energy_base=s.energy_base,
            energy_shifted=s.energy_shifted,
            phi_coeffs=s.phi_coeffs.coeffs,
            eigvec_residual=s.eigvec_residual,
            multiplicity=s.multiplicity,
        )
        for i, s in enumerate(solutions)
    )
    verification = None
    ok = True
    if verify:
        if grid is None:
            grid = default_grid(model)
        refined = []
        defect = 0.0
        for s in solutions:
            value, gap = fd_verify(model, s, grid)
            refined.append(value)
            defect = max(defect, gap)
        bound = fd_defect_bound(model, grid)
        norms: tuple[float, ...] | None
        try:
            norms = tuple(norm_squared(Wavefunction(model, s)) for s in solutions)
        except ValidationError:
            norms = None
        ok = rsup <= RESIDUAL_TOLERANCE and defect <= bound
        verification = VerificationReport(
            residual_tolerance=RESIDUAL_TOLERANCE,
            fd=FdReport(
                grid_n=grid.n_points,
                x_min=grid.x_min,
                x_max=grid.x_max,
                refined=tuple(refined),
                defect=defect,
                defect_bound=bound,
            ),
            norms=norms,
            passed=ok,
        )
    report = RunReport(
        family=model.family,
        parameters=_parameters_dict(model),
        two_j=model.params.two_j,
        shift=shift,
        common_shift_found=shift_result.found,
        shift_spread=shift_result.spread,
        levels=levels,
        residual_sup=rsup,
        pt_symmetric=pt,
        published_comparison=notes,
        verification=verification,
    )
    return report, ok


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 through main, not argparse's exit 2
        raise ValidationError(message)


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValidationError(f"expected a complex number as re,im — got {text!r}")


def _parse_pair(text: str, what: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            pass
    raise ValidationError(f"expected {what} as lo,hi — got {text!r}")


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) == 3:
        try:
            lo, hi, step = (float(p) for p in parts)
        except ValueError:
            raise ValidationError(f"expected a range as lo:hi:step — got {text!r}")
        if step <= 0:
            raise ValidationError("range step must be positive")
        return lo, hi, step
    raise ValidationError(f"expected a range as lo:hi:step — got {text!r}")


def _add_family_flags(sub: argparse.ArgumentParser, with_mu: bool = True) -> None:
    sub.add_argument("--family", required=True, choices=(SEXTIC, MORSE))
    sub.add_argument("--two-j", required=True, type=int, help="2j, a non-negative integer")
    if with_mu:
        sub.add_argument("--mu", type=float, help="sextic: a = i*mu; morse: b = (i*mu - 3)/2")
    sub.add_argument("--a", help="complex parameter as re,im")
    sub.add_argument("--b", help="morse gauge offset as re,im")
    sub.add_argument("--d", help="morse parameter as re,im")
    sub.add_argument("--sector", choices=(EVEN, ODD), help="sextic parity sector")


def _resolve_model(args) -> QesModel:
    if args.family == SEXTIC:
        if args.b is not None or args.d is not None:
            raise ValidationError("--b/--d apply to the morse family only")
        sector = args.sector or EVEN
        mu = getattr(args, "mu", None)
        if mu is not None and args.a is not None:
            raise ValidationError("give either --mu or --a, not both")
        if mu is not None:
            params = SexticParams.from_mu(mu, args.two_j, sector)
        elif args.a is not None:
            params = SexticParams(_parse_complex(args.a), args.two_j, sector)
        else:
            raise ValidationError("the sextic family needs --mu or --a")
        return make_sextic(params)
    if args.sector is not None:
        raise ValidationError("--sector applies to the sextic family only")
    a = _parse_complex(args.a) if args.a is not None else 1.0 + 0.0j
    d = _parse_complex(args.d) if args.d is not None else 1.0 + 0.0j
    mu = getattr(args, "mu", None)
    if mu is not None and args.b is not None:
        raise ValidationError("give either --mu or --b, not both")
    if mu is not None:
        params = MorseParams.from_mu(mu, args.two_j, a, d)
    elif args.b is not None:
        params = MorseParams(a, d, _parse_complex(args.b), args.two_j)
    else:
        raise ValidationError("the morse family needs --mu or --b")
    return make_morse(params)


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    report, _ = build_report(_resolve_model(args))
    print(render_report(report))
    return 0


def cmd_verify(args) -> int:
    model = _resolve_model(args)
    if args.domain is not None:
        x_min, x_max = _parse_pair(args.domain, "a domain")
        grid = GridSpec(x_min, x_max, args.grid_n)
    else:
        grid = default_grid(model, args.grid_n)
    report, ok = build_report(
        model, verify=True, grid=grid, inject_energy_error=args.inject_energy_error
    )
    print(render_report(report))
    return 0 if ok else 2


def cmd_scan(args) -> int:
    lo, hi, step = _parse_range(args.mu_range)
    lines = [SCAN_HEADER]
    if hi >= lo:
        count = int((hi - lo) / step + 1e-9) + 1
        for k in range(count):
            mu = lo + k * step
            if args.family == SEXTIC:
                model = make_sextic(SexticParams.from_mu(mu, args.two_j, args.sector or EVEN))
            else:
                if args.sector is not None:
                    raise ValidationError("--sector applies to the sextic family only")
                a = _parse_complex(args.a) if args.a is not None else 1.0 + 0.0j
                d = _parse_complex(args.d) if args.d is not None else 1.0 + 0.0j
                model = make_morse(MorseParams.from_mu(mu, args.two_j, a, d))
            solutions, shift_result = solve_model(model)
            for level, s in enumerate(solutions):
                lines.append(
                    ",".join(
                        (
                            format_float(mu),
                            str(level),
                            format_float(s.energy_base.real),
                            format_float(s.energy_base.imag),
                            format_float(s.energy_shifted.real),
                            format_float(s.energy_shifted.imag),
                            format_float(s.shift.imag),
                            str(int(shift_result.found)),
                        )
                    )
                )
    print("\n".join(lines))
    return 0


def cmd_partner(args) -> int:
    model = _resolve_model(args)
    partner = susy_partner(model)
    x_min, x_max = _parse_pair(args.range, "a range")
    n = args.samples
    if n < 1:
        raise ValidationError("--samples must be at least 1")
    xs = [x_min] if n == 1 else [x_min + i * (x_max - x_min) / (n - 1) for i in range(n)]
    rows = []
    for x in xs:
        try:
            v_minus = partner.v_minus(x)
            v_plus = partner.v_plus(x)
            rows.append(
                {
                    "x": x,
                    "pole": False,
                    "v_minus": v_minus,
                    "v_plus": v_plus,
                    "difference": v_plus - v_minus,
                }
            )
        except PoleError:
            rows.append({"x": x, "pole": True, "v_minus": None, "v_plus": None, "difference": None})
    print(to_json({"family": model.family, "two_j": model.params.two_j, "samples": rows}))
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qesolve", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="solve the finite block and report the spectrum")
    _add_family_flags(solve)
    solve.set_defaults(func=cmd_solve)

    verify = subs.add_parser("verify", help="solve plus residual/normalization/grid checks")
    _add_family_flags(verify)
    verify.add_argument("--grid-n", type=int, default=FD_REFERENCE_N)
    verify.add_argument("--domain", help="grid domain as xmin,xmax (default per family)")
    verify.add_argument(
        "--inject-energy-error",
        type=float,
        default=0.0,
        help="test hook: corrupt predicted energies by this amount",
    )
    verify.set_defaults(func=cmd_verify)

    scan = subs.add_parser("scan", help="CSV sweep of the spectrum over mu")
    _add_family_flags(scan, with_mu=False)
    scan.add_argument("--mu-range", required=True, help="lo:hi:step")
    scan.set_defaults(func=cmd_scan)

    partner = subs.add_parser("partner", help="sample the isospectral partner pair")
    _add_family_flags(partner)
    partner.add_argument("--samples", type=int, default=9)
    partner.add_argument("--range", default="-2,2", help="xmin,xmax")
    partner.set_defaults(func=cmd_partner)

    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValidationError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (NumericOverflowError, ConvergenceFailureError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
