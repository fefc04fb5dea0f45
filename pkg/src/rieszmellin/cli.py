"""Batch command-line surface: each operation as a reproducible run.

Every report embeds a RunManifest (command, instance, all numeric flags,
output paths, tool versions).  Output formats are fixed -- 10-digit scalars,
%.12e CSV fields, JSON with sorted keys -- and carry no timestamps, so a
rerun with the same manifest is byte-identical.  RIESZ_THREADS only changes
worker scheduling; reductions are combined in index order regardless.

Exit codes: 0 success, 2 usage (bad flags, unknown instance, unreadable
inputs), 3 numeric failure (tail bounds, quadrature misconvergence,
domain preconditions discovered mid-run).
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .lfunction_model import builtin, coefficient_table, load_instance_file
from .meijer_closed_forms import IDENTITY_FORMS, GSpec, g_closed, g_quadrature
from .mellin_kernel import kernel_Z, kernel_Z_prime, kernel_Z_tilde
from .riesz_sums import decay_scan, mellin_transform_check, scan_csv
from .zeros_and_identity import (
    DERIVATIVE_NODES,
    DERIVATIVE_RADIUS,
    RESIDUE_NODES,
    RESIDUE_RADIUS,
    bundled_zeros_path,
    load_zeros,
    rhl_defect,
)

log = logging.getLogger(__name__)

_DETERMINISM_NOTE = (
    "seed-free; chunked reductions are combined in index order, so "
    "RIESZ_THREADS changes scheduling only"
)


class _UsageError(ValueError):
    """Bad flags or unreadable inputs; maps to exit code 2."""


@dataclass(frozen=True)
class RunManifest:
    """What was run: command, instance, every numeric flag, output paths."""

    command: str
    instance: str | None
    parameters: dict
    outputs: tuple

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "instance": self.instance,
            "parameters": dict(self.parameters),
            "outputs": list(self.outputs),
            "determinism": _DETERMINISM_NOTE,
            "versions": {
                "python": platform.python_version(),
                "numpy": np.__version__,
                "rieszmellin": __version__,
            },
        }


def _compact_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _cpair(v: complex) -> list:
    v = complex(v)
    return [v.real, v.imag]


def _complex_arg(text: str) -> complex:
    try:
        return complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _fmt(t: float, spec: str) -> str:
    out = format(t, spec)
    # a -1e-17 rounded for display should not print as "-0.0000000000"
    if out.startswith("-") and float(out) == 0.0:
        return out[1:]
    return out


def _scalar_line(label: str, v: complex) -> str:
    return f"{label} = {_fmt(v.real, '.10f')} (re), {_fmt(v.imag, '.10f')} (im)"


def _sci_line(label: str, v: complex) -> str:
    return f"{label} = {_fmt(v.real, '.10e')} (re), {_fmt(v.imag, '.10e')} (im)"


def _resolve_instance(args):
    """(Instance, label); --instance-file overrides the builtin id."""
    path = getattr(args, "instance_file", None)
    if path:
        try:
            return load_instance_file(path), path
        except (OSError, ValueError) as exc:
            raise _UsageError(f"bad instance file {path}: {exc}") from exc
    name = getattr(args, "instance", None)
    if not name:
        raise _UsageError("an --instance id or --instance-file is required")
    try:
        return builtin(name), name
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------


def _cmd_kernel(args):
    instance, label = _resolve_instance(args)
    if not args.x > 0:
        raise _UsageError("--x must be positive")
    x = float(args.x)
    values = [("Z", kernel_Z(instance.data, x))]
    if args.tilde:
        values.append(("Ztilde", kernel_Z_tilde(instance.data, x)))
    if args.prime:
        values.append(("Zprime", kernel_Z_prime(instance.data, x)))
    lines = [_scalar_line(f"{name}({x!r})", v) for name, v in values]

    params = {"x": x, "tilde": bool(args.tilde), "prime": bool(args.prime)}
    outputs = ("-",) + ((args.json,) if args.json else ())
    mani = RunManifest("kernel", label, params, outputs)
    files = {}
    if args.json:
        payload = {"manifest": mani.as_dict()}
        payload.update({name: _cpair(v) for name, v in values})
        files[args.json] = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return "\n".join(lines) + "\n", files


# ---------------------------------------------------------------------------
# meijer-check
# ---------------------------------------------------------------------------

# one canonical argument per form for the --all table
_MEIJER_TABLE = (
    ("sepG01", 1.3),
    ("sepG03", 1.1),
    ("sepG04", 0.9),
    ("sepG05", 1.2),
    ("sepG1", 5.0),
    ("sepG2", 1.0),
)

_MEIJER_HEADER = (
    f"{'form':<7} {'z':>10} {'closed_re':>20} {'closed_im':>20} "
    f"{'quad_re':>20} {'quad_im':>20} {'rel_defect':>11}"
)


def _canonical_spec(form: str, z: complex, b0: float | None = None) -> GSpec:
    if form == "sepG01":
        b = 0.2 if b0 is None else b0
        return GSpec(m=2, b=(b, b + 0.5), z=z)
    if form == "sepG03":
        b = 0.35 if b0 is None else b0
        return GSpec(m=2, b=(b, 0.1), z=z)
    if form == "sepG04":
        b = 0.25 if b0 is None else b0
        return GSpec(m=3, b=tuple(b + j / 3.0 for j in range(3)), z=z)
    if form == "sepG05":
        b = 0.1 if b0 is None else b0
        return GSpec(m=5, b=tuple(b + j / 5.0 for j in range(5)), z=z)
    if form == "sepG1":
        b = 0.25 if b0 is None else b0
        return GSpec(m=4, b=tuple(b + j / 4.0 for j in range(4)), z=z)
    if form == "sepG2":
        c = 0.3 if b0 is None else b0
        return GSpec(m=4, b=(0.0, 0.5, -c, c), z=z)
    raise _UsageError(
        f"unknown form {form!r}; choose from {', '.join(IDENTITY_FORMS)}"
    )


def _ztxt(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}j"


def _meijer_row(form: str, spec: GSpec):
    closed = g_closed(spec, form)
    quad = g_quadrature(spec)
    rel = abs(quad - closed) / max(abs(closed), 1e-300)
    line = (
        f"{form:<7} {_ztxt(complex(spec.z)):>10} "
        f"{closed.real:20.12e} {closed.imag:20.12e} "
        f"{quad.real:20.12e} {quad.imag:20.12e} {rel:11.3e}"
    )
    entry = {
        "form": form,
        "z": _cpair(spec.z),
        "b": [_cpair(b) for b in spec.b],
        "closed": _cpair(closed),
        "quadrature": _cpair(quad),
        "rel_defect": rel,
    }
    return line, entry


def _cmd_meijer(args):
    if bool(args.all) == bool(args.form):
        raise _UsageError("choose exactly one of --all or --form NAME")
    if args.all:
        jobs = [(form, complex(z), None) for form, z in _MEIJER_TABLE]
    else:
        if args.z is None:
            raise _UsageError("--form requires --z")
        if args.z == 0:
            raise _UsageError("--z must be nonzero")
        jobs = [(args.form, args.z, args.b0)]
    lines = [_MEIJER_HEADER]
    entries = []
    for form, z, b0 in jobs:
        spec = _canonical_spec(form, z, b0)
        line, entry = _meijer_row(form, spec)
        lines.append(line)
        entries.append(entry)

    params = {
        "all": bool(args.all),
        "form": args.form,
        "z": _cpair(args.z) if args.z is not None else None,
        "b0": args.b0,
    }
    outputs = ("-",) + ((args.json,) if args.json else ())
    mani = RunManifest("meijer-check", None, params, outputs)
    files = {}
    if args.json:
        payload = {"manifest": mani.as_dict(), "rows": entries}
        files[args.json] = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return "\n".join(lines) + "\n", files


# ---------------------------------------------------------------------------
# coeffs
# ---------------------------------------------------------------------------


def _cmd_coeffs(args):
    instance, label = _resolve_instance(args)
    if args.N < 1:
        raise _UsageError("--N must be at least 1")
    table = coefficient_table(instance, args.N)
    mani = RunManifest("coeffs", label, {"N": args.N}, (args.out or "-",))
    lines = ["# " + _compact_json(mani.as_dict()), "n,a_re,a_im,b_re,b_im"]
    for n in range(1, args.N + 1):
        a, b = table.a[n], table.b[n]
        lines.append(
            f"{n},{a.real + 0.0:.17g},{a.imag + 0.0:.17g},"
            f"{b.real + 0.0:.17g},{b.imag + 0.0:.17g}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        return "", {args.out: text}
    return text, {}


# ---------------------------------------------------------------------------
# riesz
# ---------------------------------------------------------------------------


def _cmd_riesz(args):
    instance, label = _resolve_instance(args)
    if not args.ymin > 0 or not args.ymax > args.ymin:
        raise _UsageError("need 0 < ymin < ymax")
    if args.points < 4:
        raise _UsageError("need at least 4 grid points")
    if args.N is not None and args.N < 1:
        raise _UsageError("--N must be at least 1")
    grid = np.geomspace(args.ymin, args.ymax, args.points)
    params = {
        "z": _cpair(args.z),
        "ymin": args.ymin,
        "ymax": args.ymax,
        "points": args.points,
        "corrected": bool(args.corrected),
        "N": args.N,
    }
    outputs = ("-",) + ((args.csv,) if args.csv else ())
    mani = RunManifest("riesz", label, params, outputs)
    result = decay_scan(
        instance, args.z, grid, N_policy=args.N, corrected=bool(args.corrected)
    )
    payload = {
        "manifest": mani.as_dict(),
        "N": result.N,
        "fitted_slope": result.fitted_slope,
        "slope_stderr": result.slope_stderr,
        "points_total": len(result.y_grid),
        "points_used": int(sum(result.kept)),
        "tail_bound": result.tail_bound,
    }
    files = {}
    if args.csv:
        files[args.csv] = "# " + _compact_json(mani.as_dict()) + "\n" + scan_csv(result)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n", files


# ---------------------------------------------------------------------------
# mellin-check
# ---------------------------------------------------------------------------


def _cmd_mellin(args):
    instance, label = _resolve_instance(args)
    if not 0 < args.s.real < 0.5:
        raise _UsageError("--s must have real part in (0, 1/2)")
    if args.N < 1:
        raise _UsageError("--N must be at least 1")
    lhs, rhs, defect = mellin_transform_check(instance, args.s, args.z, N=args.N)
    lines = [
        _sci_line("lhs", lhs),
        _sci_line("rhs", rhs),
        f"relative defect = {defect:.4e}",
    ]
    params = {"s": _cpair(args.s), "z": _cpair(args.z), "N": args.N}
    outputs = ("-",) + ((args.json,) if args.json else ())
    mani = RunManifest("mellin-check", label, params, outputs)
    files = {}
    if args.json:
        payload = {
            "manifest": mani.as_dict(),
            "lhs": _cpair(lhs),
            "rhs": _cpair(rhs),
            "rel_defect": defect,
        }
        files[args.json] = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    return "\n".join(lines) + "\n", files


# ---------------------------------------------------------------------------
# identity
# ---------------------------------------------------------------------------


def _cmd_identity(args):
    instance, label = _resolve_instance(args)
    if not args.eta > 0:
        raise _UsageError("--eta must be positive")
    if args.N < 1:
        raise _UsageError("--N must be at least 1")
    if not args.bracket_c > 0:
        raise _UsageError("--bracket-c must be positive")
    zeros_path = args.zeros if args.zeros else str(bundled_zeros_path())
    try:
        records = load_zeros(zeros_path)
    except OSError as exc:
        raise _UsageError(f"cannot read zero list {zeros_path}: {exc}") from exc
    except ValueError as exc:
        raise _UsageError(f"bad zero list {zeros_path}: {exc}") from exc

    report = rhl_defect(instance, args.eta, records, args.N, bracket_c=args.bracket_c)
    params = {
        "eta": args.eta,
        "zeros": zeros_path,
        "N": args.N,
        "bracket_c": args.bracket_c,
    }
    mani = RunManifest("identity", label, params, ("-",))
    payload = {
        "manifest": mani.as_dict(),
        "eta": report.eta,
        "nu": report.nu,
        "lhs_eta_term": _cpair(report.lhs_eta_term),
        "lhs_nu_term": _cpair(report.lhs_nu_term),
        "lhs": _cpair(report.lhs),
        "rhs": _cpair(report.rhs),
        "zero_sum": _cpair(report.zero_sum),
        "residue_s1": _cpair(report.residue_s1),
        "residue_s0": _cpair(report.residue_s0),
        "defect": _cpair(report.defect),
        "abs_defect": abs(report.defect),
        "n_zeros_used": report.n_zeros_used,
        "n_terms_used": report.n_terms_used,
        "last_bracket_magnitude": report.last_bracket_magnitude,
        "bracket_c": report.bracket_c,
        "contour": {
            "derivative_radius": DERIVATIVE_RADIUS,
            "derivative_nodes": DERIVATIVE_NODES,
            "residue_radius": RESIDUE_RADIUS,
            "residue_nodes": RESIDUE_NODES,
        },
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n", {}


# ---------------------------------------------------------------------------
# parser / dispatch
# ---------------------------------------------------------------------------

_HANDLERS = {
    "kernel": _cmd_kernel,
    "meijer-check": _cmd_meijer,
    "coeffs": _cmd_coeffs,
    "riesz": _cmd_riesz,
    "mellin-check": _cmd_mellin,
    "identity": _cmd_identity,
}


def _add_instance_flags(sub):
    sub.add_argument("--instance", help="builtin id: zeta, dirichlet:q:index, "
                     "dedekind_quadratic:D")
    sub.add_argument("--instance-file", help="JSON Selberg-data file "
                     "(overrides --instance)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rieszmellin",
        description="Kernel transforms, closed-form cross-checks, and "
        "zero-sum diagnostics for Selberg-class data.",
        epilog="Set RIESZ_THREADS to cap worker threads; results are "
        "bit-identical at any setting.",
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("kernel", help="evaluate Z (optionally Z~, Z') at a point")
    _add_instance_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tilde", action="store_true", help="also print Z~(x)")
    p.add_argument("--prime", action="store_true", help="also print Z'(x)")
    p.add_argument("--json", metavar="PATH", help="write a JSON report")

    p = subs.add_parser("meijer-check",
                        help="closed form vs contour quadrature")
    p.add_argument("--all", action="store_true",
                   help="run the six-identity table at canonical arguments")
    p.add_argument("--form", choices=IDENTITY_FORMS, help="single form to check")
    p.add_argument("--z", type=_complex_arg, help="argument for --form")
    p.add_argument("--b0", type=float, help="leading parameter override")
    p.add_argument("--json", metavar="PATH", help="write a JSON report")

    p = subs.add_parser("coeffs", help="a_F, b_F table as CSV")
    _add_instance_flags(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", metavar="PATH", help="CSV path (default stdout)")

    p = subs.add_parser("riesz", help="weighted decay scan over a y grid")
    _add_instance_flags(p)
    p.add_argument("--z", type=_complex_arg, default=0j)
    p.add_argument("--ymin", type=float, required=True)
    p.add_argument("--ymax", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--corrected", action="store_true",
                   help="add the pole-compensation sum")
    p.add_argument("--N", type=int, help="coefficient count (default: sized "
                   "so the tail bound is about 1e-6)")
    p.add_argument("--csv", metavar="PATH", help="write the grid as CSV")

    p = subs.add_parser("mellin-check",
                        help="transform-identity defect at (s, z)")
    _add_instance_flags(p)
    p.add_argument("--s", type=_complex_arg, required=True)
    p.add_argument("--z", type=_complex_arg, default=0j)
    p.add_argument("--N", type=int, default=200_000)
    p.add_argument("--json", metavar="PATH", help="write a JSON report")

    p = subs.add_parser("identity", help="explicit-formula consistency report")
    _add_instance_flags(p)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--zeros", metavar="PATH",
                   help="ordinate list (default: bundled first 100)")
    p.add_argument("--N", type=int, default=100_000,
                   help="kernel terms per side")
    p.add_argument("--bracket-c", type=float, default=0.01)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        stdout_text, files = _HANDLERS[args.subcommand](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    # single write at the end; partial artifacts never hit disk
    try:
        for path, content in files.items():
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
    except OSError as exc:
        print(f"usage error: cannot write output: {exc}", file=sys.stderr)
        return 2
    if stdout_text:
        sys.stdout.write(stdout_text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
