"""Command-line interface: print operators, verify anticommuting partners,
solve spectra, scan a parameter to CSV, search for chiral partners, and dump
characteristic polynomials.

Exit codes: 0 success / verified, 1 clean negative result, 2 input or usage
error. CSV output uses 17 significant digits (round-trip exact for doubles);
human-readable tables use 6.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import charpoly, chiral, linalg, models
from .angmom import SpinLabel, build_spin_operators
from .chiral import Symmetry
from .rotations import CompositeRotation, RotationSpec, composite_matrix

TEXT_DIGITS = 6

_OPERATOR_NAMES = ("jx", "jy", "jz", "jplus", "jminus", "jsq")


@dataclass(frozen=True)
class ScanRow:
    """One grid point of a parameter scan."""

    param_value: float
    eigenvalues: tuple[float, ...]
    pairing_ok: bool
    max_pair_mismatch: float


def _fmt(x, digits: int = TEXT_DIGITS) -> str:
    return f"{float(x):.{digits}g}"


def _csv(x) -> str:
    return f"{float(x):.17g}"


def _emit(args, lines_or_payload):
    """Write text lines or a JSON payload to --out or stdout."""
    if getattr(args, "format", "text") == "json":
        text = json.dumps(lines_or_payload[1], indent=2, sort_keys=True)
    else:
        text = "\n".join(lines_or_payload[0])
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _matrix_lines(m) -> list[str]:
    width = TEXT_DIGITS + 8
    lines = []
    for title, block in (("real part:", m.real), ("imag part:", m.imag)):
        lines.append(title)
        for row in block:
            lines.append("".join(f"{v:>{width}.{TEXT_DIGITS}g}" for v in row))
    return lines


def _matrix_entries(m) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in m.reshape(-1)]


def _rotation_payload(rot: CompositeRotation) -> dict:
    return {
        "description": rot.describe(),
        "factors": [
            {"slot": f.slot, "axis": list(f.axis), "angle": f.angle}
            for f in rot.factors
        ],
    }


def _verdict_payload(verdict) -> dict:
    return {
        "kind": verdict.kind.value,
        "residual_commute": verdict.residual_commute,
        "residual_anticommute": verdict.residual_anticommute,
    }


def _pairing_payload(report) -> dict:
    return {
        "pairs": [list(p) for p in report.pairs],
        "zero_modes": report.zero_modes,
        "is_chiral_paired": report.is_chiral_paired,
        "max_mismatch": report.max_mismatch,
    }


def _rotation_from_text(text) -> CompositeRotation:
    """Parse an explicit rotation: one {"slot","axis","angle"} object or a
    list of them. "slot" defaults to 0."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"rotation is not valid JSON: {exc}") from None
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list) or not doc:
        raise ValueError("rotation must be a JSON object or non-empty list of objects")
    factors = []
    for entry in doc:
        if not isinstance(entry, dict):
            raise ValueError("each rotation factor must be a JSON object")
        unknown = set(entry) - {"slot", "axis", "angle"}
        if unknown:
            raise ValueError(f"unknown rotation keys: {sorted(unknown)}")
        if "axis" not in entry or "angle" not in entry:
            raise ValueError('rotation factors need "axis" and "angle"')
        factors.append(RotationSpec(entry.get("slot", 0), entry["axis"], entry["angle"]))
    return CompositeRotation(tuple(factors))


def _classify_tol(args) -> float:
    tol = getattr(args, "tol", None)
    return chiral.DEFAULT_TOL if tol is None else float(tol)


def cmd_ops(args) -> int:
    label = SpinLabel.parse(args.j)
    matrix = getattr(build_spin_operators(label), args.which)
    lines = [f"{args.which} for j = {label} (dim {label.dim}, hbar = 1)"]
    lines += _matrix_lines(matrix)
    payload = {
        "j": str(label),
        "which": args.which,
        "dim": label.dim,
        "entries": _matrix_entries(matrix),
    }
    _emit(args, (lines, payload))
    return 0


def cmd_verify(args) -> int:
    built = models.build(models.load_model_file(args.model_file))
    tag = models.model_tag(built.spec)
    if args.rotation == "auto":
        rot = built.chiral_partner
        if rot is None:
            lines = [
                f"model: {tag}",
                "rotation: auto (no partner: chiral condition unmet)",
                f"condition: {built.condition_note}",
                "verdict: not verified",
            ]
            payload = {
                "model": tag,
                "rotation": None,
                "chiral_condition_met": False,
                "condition_note": built.condition_note,
                "verified": False,
            }
            _emit(args, (lines, payload))
            return 1
    else:
        rot = _rotation_from_text(args.rotation)
    rmat = composite_matrix(rot, built.dims)
    shifted = models.shifted_hamiltonian(built)
    verdict = chiral.classify(rmat, shifted, _classify_tol(args))
    shifted_eigs = linalg.hermitian_eigensolve(shifted).eigenvalues
    ptol = chiral.default_pairing_tol(shifted)
    pairing = chiral.pairing_check(shifted_eigs, ptol, ptol)
    verified = (
        verdict.kind in (Symmetry.ANTICOMMUTING, Symmetry.BOTH)
        and pairing.is_chiral_paired
    )
    lines = [
        f"model: {tag} (dim {built.hamiltonian.shape[0]}, shift {_fmt(built.shift)})",
        f"rotation: {rot.describe()}",
        f"verdict: {verdict.kind.value} "
        f"(commute residual {verdict.residual_commute:.3e}, "
        f"anticommute residual {verdict.residual_anticommute:.3e})",
        f"pairing: {'ok' if pairing.is_chiral_paired else 'FAILED'} "
        f"({len(pairing.pairs)} pairs, {pairing.zero_modes} zero modes, "
        f"max mismatch {pairing.max_mismatch:.3e})",
        f"condition: {built.condition_note}",
        f"verified: {'yes' if verified else 'no'}",
    ]
    payload = {
        "model": tag,
        "dim": built.hamiltonian.shape[0],
        "shift": built.shift,
        "rotation": _rotation_payload(rot),
        "verdict": _verdict_payload(verdict),
        "pairing": _pairing_payload(pairing),
        "chiral_condition_met": built.chiral_condition_met,
        "condition_note": built.condition_note,
        "verified": verified,
    }
    _emit(args, (lines, payload))
    return 0 if verified else 1


def _spectrum_lines(tag, built, report, closed_phys, numeric_phys) -> list[str]:
    lines = [
        f"model: {tag} (dim {built.hamiltonian.shape[0]}, shift {_fmt(built.shift)})",
        f"method: {report.method.value}",
        f"parity_ok (shifted): {report.parity_ok}",
    ]
    if closed_phys is not None:
        lines.append(f"{'closed form':>16} {'numeric':>16}")
        for c, n in zip(closed_phys, numeric_phys):
            lines.append(f"{_fmt(c):>16} {_fmt(n):>16}")
        lines.append(f"max |closed - numeric| = {report.max_root_deviation:.3e}")
    else:
        lines.append(f"{'numeric':>16}")
        for n in numeric_phys:
            lines.append(f"{_fmt(n):>16}")
    return lines


def cmd_spectrum(args) -> int:
    built = models.build(models.load_model_file(args.model_file))
    tag = models.model_tag(built.spec)
    shifted = models.shifted_hamiltonian(built)
    if args.method == "numeric":
        numeric = linalg.hermitian_eigensolve(built.hamiltonian).eigenvalues
        lines = [
            f"model: {tag} (dim {built.hamiltonian.shape[0]})",
            "method: numeric_only (requested)",
            f"{'numeric':>16}",
        ]
        lines += [f"{_fmt(v):>16}" for v in numeric]
        payload = {
            "model": tag,
            "method": "numeric_only",
            "eigenvalues_numeric": [float(v) for v in numeric],
        }
        _emit(args, (lines, payload))
        return 0
    partner = None
    if built.chiral_partner is not None:
        partner = composite_matrix(built.chiral_partner, built.dims)
    report = charpoly.full_solve(shifted, partner=partner)
    # the polynomial pipeline works on H - shift; add the shift back so both
    # columns are physical energies
    numeric_phys = [v + built.shift for v in report.numeric_eigenvalues]
    closed_phys = None
    if report.closed_form_eigenvalues is not None:
        closed_phys = [v + built.shift for v in report.closed_form_eigenvalues]
    if args.method == "radicals" and report.method is not charpoly.SolveMethod.RADICALS:
        reason = (
            f"radicals unavailable for dim {built.hamiltonian.shape[0]}: "
            f"classifier says {report.method.value}"
            + ("" if report.parity_ok else " (characteristic polynomial is not even)")
        )
        print(reason, file=sys.stderr)
        return 1
    lines = _spectrum_lines(tag, built, report, closed_phys, numeric_phys)
    payload = {
        "model": tag,
        "dim": built.hamiltonian.shape[0],
        "shift": built.shift,
        "method": report.method.value,
        "parity_ok": report.parity_ok,
        "charpoly_shifted": list(report.charpoly.coeffs),
        "eigenvalues_numeric": numeric_phys,
        "eigenvalues_closed_form": closed_phys,
        "max_root_deviation": report.max_root_deviation,
    }
    _emit(args, (lines, payload))
    return 0


def cmd_scan(args) -> int:
    spec = models.load_model_file(args.model_file)
    out_path = getattr(args, "out", None)
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    if not out_path:
        raise ValueError("scan writes CSV and requires --out PATH")
    values = np.linspace(args.start, args.stop, args.steps)
    built_models = models.parameter_sweep(spec, args.param, values)
    dim = built_models[0].hamiltonian.shape[0]
    rows = []
    for value, built in zip(values, built_models):
        # diagonalize the shifted (chiral) part; emit physical eigenvalues
        shifted_eigs = linalg.hermitian_eigensolve(models.shifted_hamiltonian(built)).eigenvalues
        tol = 1e-9 * max(1.0, float(np.linalg.norm(shifted_eigs)))
        report = chiral.pairing_check(shifted_eigs, tol, tol)
        rows.append(
            ScanRow(
                float(value),
                tuple(float(x + built.shift) for x in shifted_eigs),
                report.is_chiral_paired,
                report.max_mismatch,
            )
        )
    header = (
        ["param", args.param]
        + [f"lambda_{i}" for i in range(1, dim + 1)]
        + ["pairing_ok", "max_pair_mismatch"]
    )
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            cells = [args.param, _csv(row.param_value)]
            cells += [_csv(v) for v in row.eigenvalues]
            cells += ["true" if row.pairing_ok else "false", _csv(row.max_pair_mismatch)]
            fh.write(",".join(cells) + "\n")
    failures = [row for row in rows if not row.pairing_ok]
    if getattr(args, "format", "text") == "json":
        payload = {
            "rows": len(rows),
            "out": out_path,
            "all_paired": not failures,
            "first_failure": None
            if not failures
            else {
                "param_value": failures[0].param_value,
                "max_pair_mismatch": failures[0].max_pair_mismatch,
            },
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        summary = (
            "all rows chiral-paired"
            if not failures
            else (
                f"pairing FAILED first at {args.param} = {_fmt(failures[0].param_value)} "
                f"(mismatch {failures[0].max_pair_mismatch:.3e})"
            )
        )
        print(f"wrote {len(rows)} rows to {out_path}; {summary}")
    return 0


def _matrix_from_doc(doc, origin):
    unknown = set(doc) - {"dims", "entries"}
    if unknown:
        raise ValueError(f"{origin}: unknown keys {sorted(unknown)}")
    dims = tuple(int(d) for d in doc["dims"])
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"{origin}: dims must be positive integers")
    n = math.prod(dims)
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n * n:
        raise ValueError(f"{origin}: expected {n * n} [re, im] entries")
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in entries])
    except (TypeError, ValueError):
        raise ValueError(f"{origin}: entries must be [re, im] pairs") from None
    h = linalg.require_hermitian(flat.reshape(n, n), f"{origin}: matrix")
    return h, dims


def cmd_search(args) -> int:
    with open(args.input_file, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{args.input_file}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ValueError(f"{args.input_file}: expected a JSON object")
    if "model" in doc:
        built = models.build(models.parse_model(doc))
        h = models.shifted_hamiltonian(built)
        dims = built.dims
        origin = models.model_tag(built.spec)
    elif {"dims", "entries"} <= set(doc):
        h, dims = _matrix_from_doc(doc, args.input_file)
        origin = "matrix"
    else:
        raise ValueError(
            f"{args.input_file}: expected a model document or a matrix document "
            'with "dims" and "entries"'
        )
    tol = _classify_tol(args)
    hits = chiral.search_partners(h, dims, tol=tol)
    results = []
    for hit in hits:
        verdict = chiral.classify(composite_matrix(hit, dims), h, tol)
        results.append((hit, verdict.residual_anticommute))
    lines = [f"search over {origin} (dim {h.shape[0]}, subsystems {list(dims)}):"]
    if results:
        lines += [
            f"  {hit.describe()}  anticommute residual {res:.3e}"
            for hit, res in results
        ]
    else:
        lines.append("  no anticommuting rotation in the candidate family")
    payload = {
        "input": origin,
        "dims": list(dims),
        "count": len(results),
        "hits": [
            {**_rotation_payload(hit), "residual_anticommute": res}
            for hit, res in results
        ],
    }
    _emit(args, (lines, payload))
    return 0 if results else 1


def cmd_charpoly(args) -> int:
    built = models.build(models.load_model_file(args.model_file))
    tag = models.model_tag(built.spec)
    shifted = models.shifted_hamiltonian(built)
    poly = charpoly.characteristic_polynomial(shifted)
    parity_ok, reduced = charpoly.parity_reduce(poly)
    lines = [
        f"model: {tag} (dim {poly.dim}, shift {_fmt(built.shift)})",
        "coefficients of det(H - shift - lambda), ascending in lambda:",
        "  " + ", ".join(_fmt(c) for c in poly.coeffs),
        f"parity_ok: {parity_ok}",
        f"zero-root multiplicity: {reduced.zero_root_multiplicity}",
    ]
    if parity_ok:
        lines.append("reduced polynomial in mu = lambda^2, ascending:")
        lines.append("  " + ", ".join(_fmt(c) for c in reduced.mu_coeffs))
    payload = {
        "model": tag,
        "dim": poly.dim,
        "shift": built.shift,
        "coefficients": list(poly.coeffs),
        "parity_ok": parity_ok,
        "zero_root_multiplicity": reduced.zero_root_multiplicity,
        "mu_coefficients": list(reduced.mu_coeffs) if parity_ok else None,
    }
    _emit(args, (lines, payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    # global flags live on a parent so they are accepted both before and
    # after the subcommand; SUPPRESS keeps the subparser from clobbering a
    # value parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS,
                        help="output format (default text)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="override the classification tolerance (default 1e-10)")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write output to this path (scan: the CSV file)")

    parser = argparse.ArgumentParser(
        prog="chiralspin",
        parents=[common],
        description=(
            "Angular-momentum Hamiltonians, anticommuting rotation symmetries, "
            "and radical-solvable spectra (hbar = 1)"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ops", parents=[common],
                       help="print an angular momentum operator matrix")
    p.add_argument("--j", required=True, help='spin label, e.g. "1/2", "1", "5/2"')
    p.add_argument("--which", required=True, choices=_OPERATOR_NAMES)
    p.set_defaults(func=cmd_ops)

    p = sub.add_parser("verify", parents=[common],
                       help="verify an anticommuting partner and spectral pairing")
    p.add_argument("model_file")
    p.add_argument("--rotation", default="auto",
                   help='"auto" (documented partner) or JSON like '
                        '{"slot":0,"axis":[0,0,1],"angle":"pi"}')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", parents=[common],
                       help="closed-form and numeric eigenvalues")
    p.add_argument("model_file")
    p.add_argument("--method", choices=("auto", "numeric", "radicals"), default="auto")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", parents=[common],
                       help="sweep one parameter and write spectra to CSV")
    p.add_argument("model_file")
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("search", parents=[common],
                       help="search rotation products for anticommuting partners")
    p.add_argument("input_file",
                   help="model file, or matrix file with dims + row-major [re, im] entries")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("charpoly", parents=[common],
                       help="characteristic polynomial and parity reduction")
    p.add_argument("model_file")
    p.set_defaults(func=cmd_charpoly)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ArithmeticError, linalg.ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
