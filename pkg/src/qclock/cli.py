"""Command-line interface and file formats; the only module with I/O.

Exit codes: 0 ok, 1 verify-suite failure, 2 malformed input, 3 incompatible
spectrum, 4 bad dimension, 5 internal consistency failure.  All output is a
deterministic function of (input file, flags, seed): floats are printed with
17 significant digits in JSON (lossless round-trip) and 12 in text/CSV.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .dynamics import clock_run, evolve_density, measure_shift_sign
from .errors import (
    DegenerateSpectrum,
    DimensionNotOddPrime,
    IncompatibleSpectrum,
    NoRationalWithinTolerance,
    QClockError,
)
from .numerics import is_odd_prime, rationalize
from .phase_space import build_basis, wigner_of_density
from .schwinger import build_pair, measure_commutation_sign, shift_eigenvector
from .spectrum import (
    IncompatibilityCertificate,
    NOT_COMMENSURABLE,
    Spectrum,
    SpectrumDecomposition,
    decompose_spectrum,
)
from .time_interval import build_time_operator, measure_weyl_sign
from .verification import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 2
EXIT_INCOMPATIBLE = 3
EXIT_BAD_DIMENSION = 4
EXIT_INTERNAL = 5

_VERIFY_DIM_CAP = 31  # runtime guard for the verify suite
_RATIO_RE = re.compile(r"^[+-]?\d+/\d+$")


class SpectrumFileError(QClockError):
    """Malformed spectrum file; the message names the offending field."""


# ---------------------------------------------------------------------------
# deterministic serialization


def _fmt17(x: float) -> str:
    s = format(float(x), ".17g")
    if not any(ch in s for ch in ".eE"):
        s += ".0"
    return s


def _fmt12(x: float) -> str:
    return format(float(x), ".12g")


def _dump_json(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(
            f"{pad}  {json.dumps(str(key))}: {_dump_json(item, indent + 1)}"
            for key, item in value.items()
        )
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if all(not isinstance(item, (dict, list, tuple)) for item in value):
            return "[" + ", ".join(_dump_json(item) for item in value) + "]"
        body = ",\n".join(f"{pad}  {_dump_json(item, indent + 1)}" for item in value)
        return "[\n" + body + "\n" + pad + "]"
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt17(value)
    if isinstance(value, Fraction):
        return json.dumps(f"{value.numerator}/{value.denominator}")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# spectrum files


def load_spectrum_file(path: str) -> dict:
    """Parse a spectrum file: {"n": int, "energies": [...], "label"?: str}.

    Energies are JSON numbers or "p/q" strings; unknown fields are rejected.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise SpectrumFileError(f"cannot read spectrum file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpectrumFileError(f"spectrum file is not valid JSON: {exc}") from exc

    if not isinstance(raw, dict):
        raise SpectrumFileError("spectrum file must be a JSON object")
    unknown = sorted(set(raw) - {"n", "energies", "label"})
    if unknown:
        raise SpectrumFileError(f"unknown field {unknown[0]!r} in spectrum file")
    if "n" not in raw or "energies" not in raw:
        missing = "n" if "n" not in raw else "energies"
        raise SpectrumFileError(f"missing field {missing!r} in spectrum file")

    n = raw["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise SpectrumFileError("field 'n' must be an integer")
    energies = raw["energies"]
    if not isinstance(energies, list):
        raise SpectrumFileError("field 'energies' must be a list")
    if len(energies) != n:
        raise SpectrumFileError(
            f"field 'energies' has {len(energies)} entries, expected n = {n}"
        )
    for i, entry in enumerate(energies):
        if isinstance(entry, bool):
            raise SpectrumFileError(f"energies[{i}] must be a number or 'p/q' string")
        if isinstance(entry, str):
            if not _RATIO_RE.match(entry):
                raise SpectrumFileError(f"energies[{i}] is not a 'p/q' string: {entry!r}")
            if int(entry.split("/")[1]) == 0:
                raise SpectrumFileError(f"energies[{i}] has zero denominator: {entry!r}")
        elif not isinstance(entry, (int, float)):
            raise SpectrumFileError(f"energies[{i}] must be a number or 'p/q' string")
        elif isinstance(entry, float) and not math.isfinite(entry):
            raise SpectrumFileError(f"energies[{i}] is not finite")
    label = raw.get("label")
    if label is not None and not isinstance(label, str):
        raise SpectrumFileError("field 'label' must be a string")
    return {"n": n, "energies": energies, "label": label}


def _entry_as_float(entry) -> float:
    if isinstance(entry, str):
        num, den = entry.split("/")
        return int(num) / int(den)
    return float(entry)


def _entries_to_fractions(entries, tolerance: float, max_denominator: int):
    """Exact entries stay exact; floats go through rationalize.

    Returns (fractions, residuals) or raises _NotCommensurableEntry with the
    failing index.
    """
    fractions = []
    residuals = []
    for i, entry in enumerate(entries):
        if isinstance(entry, str):
            num, den = entry.split("/")
            fractions.append(Fraction(int(num), int(den)))
            residuals.append(0.0)
        elif isinstance(entry, int):
            fractions.append(Fraction(entry))
            residuals.append(0.0)
        else:
            try:
                frac = rationalize(entry, tolerance, max_denominator)
            except NoRationalWithinTolerance as exc:
                raise _NotCommensurableEntry(i, entry) from exc
            fractions.append(frac)
            residuals.append(abs(entry - float(frac)))
    return fractions, residuals


class _NotCommensurableEntry(QClockError):
    def __init__(self, index: int, value: float):
        super().__init__(f"energy {index} ({value!r}) is not commensurable")
        self.index = index
        self.value = value


def _require_odd_prime(n: int) -> None:
    if not is_odd_prime(n):
        raise DimensionNotOddPrime(f"n = {n} is not an odd prime")


# ---------------------------------------------------------------------------
# analyze


def _certificate_dict(cert) -> dict:
    if isinstance(cert, IncompatibilityCertificate):
        out = {"reason": cert.reason}
        if cert.residues is not None:
            out["residues"] = list(cert.residues)
        if cert.first_bad_index is not None:
            out["first_bad_index"] = cert.first_bad_index
        out["detail"] = cert.detail
        return out
    return dict(cert)


def _decompose_fractions(n: int, fractions):
    """decompose_spectrum with the all-equal case folded into a certificate."""
    try:
        return decompose_spectrum(Spectrum(dim=n, energies=tuple(fractions)))
    except DegenerateSpectrum as exc:
        return {"reason": "DegenerateSpectrum", "detail": str(exc)}


def _verdict_fields(outcome) -> dict:
    if isinstance(outcome, SpectrumDecomposition):
        return {
            "compatible": True,
            "omega": outcome.omega,
            "k": outcome.k,
            "delta_tau": outcome.delta_tau,
            "f": list(outcome.f),
        }
    return {"compatible": False, "certificate": _certificate_dict(outcome)}


def cmd_analyze(args) -> int:
    data = load_spectrum_file(args.spectrum)
    _require_odd_prime(data["n"])
    n = data["n"]

    try:
        fractions, residuals = _entries_to_fractions(
            data["energies"], args.tolerance, args.max_denominator
        )
        outcome = _decompose_fractions(n, fractions)
    except _NotCommensurableEntry as exc:
        fractions = None
        residuals = None
        outcome = IncompatibilityCertificate(
            reason=NOT_COMMENSURABLE,
            first_bad_index=exc.index,
            detail=str(exc),
        )

    report = {
        "tool_version": __version__,
        "command": "analyze",
        "input": {
            "path": args.spectrum,
            "n": n,
            "energies": data["energies"],
            "label": data["label"],
            "tolerance": args.tolerance,
            "max_denominator": args.max_denominator,
            "shift_ground": bool(args.shift_ground),
        },
        "rationalization_residuals": residuals,
    }
    report.update(_verdict_fields(outcome))

    pair = build_pair(n)
    signs = {
        "commutation_sign": measure_commutation_sign(pair),
        "shift_direction_sign": None,
        "weyl_pair_sign": None,
    }
    if isinstance(outcome, SpectrumDecomposition):
        signs["shift_direction_sign"] = measure_shift_sign(pair, outcome)
        signs["weyl_pair_sign"] = measure_weyl_sign(build_time_operator(pair, outcome), outcome)
    report["convention_notes"] = signs

    if args.shift_ground:
        if fractions is None:
            report["shifted"] = {
                "compatible": False,
                "certificate": _certificate_dict(outcome),
            }
        else:
            shifted = [e - fractions[0] for e in fractions]
            report["shifted"] = _verdict_fields(_decompose_fractions(n, shifted))

    if args.format == "json":
        _emit(_dump_json(report))
    else:
        _emit_analyze_text(report)
    return EXIT_OK if report["compatible"] else EXIT_INCOMPATIBLE


def _emit_analyze_text(report: dict) -> None:
    lines = [f"qclock analyze {report['tool_version']}"]
    src = report["input"]
    label = f" ({src['label']})" if src["label"] else ""
    lines.append(f"spectrum: {src['path']}{label}")
    lines.append(f"n: {src['n']}")
    if report["compatible"]:
        lines.append("compatible: yes")
        omega = report["omega"]
        lines.append(f"omega: {omega.numerator}/{omega.denominator}")
        lines.append(f"k: {report['k']}")
        lines.append(f"delta_tau: {_fmt12(report['delta_tau'])}")
        lines.append("f: " + ", ".join(str(x) for x in report["f"]))
    else:
        cert = report["certificate"]
        lines.append("compatible: no")
        lines.append(f"reason: {cert['reason']}")
        if "residues" in cert:
            lines.append("residues: " + ", ".join(str(r) for r in cert["residues"]))
        if "first_bad_index" in cert:
            lines.append(f"first_bad_index: {cert['first_bad_index']}")
        lines.append(f"detail: {cert['detail']}")
    notes = report["convention_notes"]
    lines.append(
        "signs: commutation="
        + str(notes["commutation_sign"])
        + " shift_direction="
        + str(notes["shift_direction_sign"])
        + " weyl_pair="
        + str(notes["weyl_pair_sign"])
    )
    if "shifted" in report:
        sub = report["shifted"]
        if sub["compatible"]:
            omega = sub["omega"]
            lines.append(
                f"ground-shifted: compatible, omega={omega.numerator}/{omega.denominator}, "
                f"k={sub['k']}, delta_tau={_fmt12(sub['delta_tau'])}"
            )
        else:
            lines.append(f"ground-shifted: incompatible ({sub['certificate']['reason']})")
    _emit("\n".join(lines))


# ---------------------------------------------------------------------------
# clock


def _load_compatible(args):
    """Shared front-end for commands that need a decomposition."""
    data = load_spectrum_file(args.spectrum)
    _require_odd_prime(data["n"])
    n = data["n"]
    try:
        fractions, _ = _entries_to_fractions(data["energies"], 1e-9, 10**6)
    except _NotCommensurableEntry as exc:
        raise IncompatibleSpectrum(str(exc)) from exc
    try:
        outcome = decompose_spectrum(Spectrum(dim=n, energies=tuple(fractions)))
    except DegenerateSpectrum as exc:
        raise IncompatibleSpectrum(str(exc)) from exc
    if not isinstance(outcome, SpectrumDecomposition):
        raise IncompatibleSpectrum(outcome.detail)
    return data, Spectrum(dim=n, energies=tuple(fractions)), outcome


def cmd_clock(args) -> int:
    data, spec, decomp = _load_compatible(args)
    n = spec.dim
    steps = args.steps if args.steps is not None else 2 * n
    if not 0 <= args.initial < n:
        raise SpectrumFileError(f"--initial must be in 0..{n - 1}, got {args.initial}")
    if steps < 1:
        raise SpectrumFileError(f"--steps must be >= 1, got {steps}")

    pair = build_pair(n)
    basis = build_basis(pair)
    trace = clock_run(pair, basis, decomp, spec, args.initial, steps)

    if args.format == "json":
        report = {
            "tool_version": __version__,
            "command": "clock",
            "input": {
                "path": args.spectrum,
                "n": n,
                "energies": data["energies"],
                "label": data["label"],
                "initial": args.initial,
                "steps": steps,
            },
            "dim": trace.dim,
            "k": trace.k,
            "direction_sign": trace.direction_sign,
            "delta_tau": trace.delta_tau,
            "steps_records": [
                {
                    "j": rec.j,
                    "time": rec.time,
                    "occupied_index": rec.occupied_index,
                    "occupied_probability": rec.occupied_probability,
                    "max_offsite": rec.max_offsite,
                }
                for rec in trace.steps
            ],
        }
        _emit(_dump_json(report))
    else:
        buffer = io.StringIO()
        buffer.write("j,time,occupied_index,occupied_probability,max_offsite\n")
        for rec in trace.steps:
            buffer.write(
                f"{rec.j},{_fmt12(rec.time)},{rec.occupied_index},"
                f"{_fmt12(rec.occupied_probability)},{_fmt12(rec.max_offsite)}\n"
            )
        sys.stdout.write(buffer.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------
# wigner


def _parse_state(text: str, n: int):
    if text == "mixed":
        return ("mixed", None)
    match = re.match(r"^([uv]):(\d+)$", text)
    if not match:
        raise SpectrumFileError(
            f"--state must be 'v:INT', 'u:INT', or 'mixed', got {text!r}"
        )
    index = int(match.group(2))
    if not 0 <= index < n:
        raise SpectrumFileError(f"--state index {index} outside 0..{n - 1}")
    return (match.group(1), index)


def cmd_wigner(args) -> int:
    data = load_spectrum_file(args.spectrum)
    _require_odd_prime(data["n"])
    n = data["n"]
    kind, index = _parse_state(args.state, n)
    if (args.time is None) == (args.step is None):
        raise SpectrumFileError("exactly one of --time or --step is required")

    if args.step is not None:
        _, _, decomp = _load_compatible(args)
        t = args.step * decomp.delta_tau
    else:
        t = args.time

    pair = build_pair(n)
    basis = build_basis(pair)
    if kind == "mixed":
        rho = np.eye(n, dtype=np.complex128) / n
    elif kind == "v":
        vec = shift_eigenvector(pair, index)
        rho = np.outer(vec, vec.conj())
    else:
        rho = np.zeros((n, n), dtype=np.complex128)
        rho[index, index] = 1.0

    hamiltonian = np.diag(
        np.array([_entry_as_float(e) for e in data["energies"]], dtype=np.complex128)
    )
    grid = wigner_of_density(basis, evolve_density(rho, hamiltonian, t))

    imag_defect = float(np.max(np.abs(grid.imag)))
    real_ok = imag_defect < 1e-10
    if args.format == "json":
        if real_ok:
            values = [[float(x) for x in row] for row in grid.real]
        else:
            values = [[f"{x.real!r}{x.imag:+}j" for x in row] for row in grid]
        report = {
            "tool_version": __version__,
            "command": "wigner",
            "input": {
                "path": args.spectrum,
                "n": n,
                "energies": data["energies"],
                "label": data["label"],
                "state": args.state,
                "time": t,
            },
            "dim": n,
            "real": real_ok,
            "values": values,
        }
        _emit(_dump_json(report))
    else:
        buffer = io.StringIO()
        buffer.write("m\\n," + ",".join(str(c) for c in range(n)) + "\n")
        for m in range(n):
            if real_ok:
                cells = [_fmt12(x) for x in grid[m].real]
            else:
                cells = [f"{_fmt12(x.real)}{'+' if x.imag >= 0 else '-'}{_fmt12(abs(x.imag))}j" for x in grid[m]]
            buffer.write(f"{m}," + ",".join(cells) + "\n")
        sys.stdout.write(buffer.getvalue())
    if not real_ok:
        print(
            f"error: wigner grid has imaginary parts up to {imag_defect:.3e}",
            file=sys.stderr,
        )
        return EXIT_INTERNAL
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if not is_odd_prime(args.n) or args.n > _VERIFY_DIM_CAP:
        raise DimensionNotOddPrime(
            f"--n must be an odd prime <= {_VERIFY_DIM_CAP}, got {args.n}"
        )
    report = run_suite(args.n, args.seed)
    if args.format == "json":
        payload = {
            "tool_version": __version__,
            "command": "verify",
            "dim": report.dim,
            "seed": report.seed,
            "passed": report.passed,
            "signs": dict(report.signs),
            "checks": [
                {
                    "name": chk.name,
                    "residual": chk.residual,
                    "threshold": chk.threshold,
                    "mode": chk.mode,
                    "passed": chk.passed,
                }
                for chk in report.checks
            ],
        }
        _emit(_dump_json(payload))
    else:
        lines = [f"qclock verify {__version__}  n={report.dim} seed={report.seed}"]
        lines.append(
            "signs: commutation="
            + str(report.signs["commutation_sign"])
            + " shift_direction="
            + str(report.signs["shift_direction_sign"])
            + " weyl_pair="
            + str(report.signs["weyl_pair_sign"])
        )
        for chk in report.checks:
            comparator = "<=" if chk.mode == "upper" else ">="
            status = "PASS" if chk.passed else "FAIL"
            lines.append(
                f"{status} {chk.name}: residual={_fmt12(chk.residual)} "
                f"{comparator} {_fmt12(chk.threshold)}"
            )
        verdict = "all checks passed" if report.passed else "SOME CHECKS FAILED"
        lines.append(verdict)
        _emit("\n".join(lines))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qclock",
        description="Discrete phase-space clock toolkit",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="decide whether a spectrum supports a clock")
    p.add_argument("--spectrum", required=True, help="path to a spectrum JSON file")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--max-denominator", type=int, default=10**6)
    p.add_argument("--shift-ground", action="store_true",
                   help="also analyze with the ground energy subtracted")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("clock", help="run the stroboscopic clock protocol")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--initial", type=int, default=0)
    p.add_argument("--steps", type=int, default=None, help="tick count (default 2N)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_clock)

    p = sub.add_parser("wigner", help="dump the Wigner grid of an evolved state")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--state", required=True, help="v:INT, u:INT, or mixed")
    p.add_argument("--time", type=float, default=None)
    p.add_argument("--step", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("verify", help="run the invariant suite at a dimension")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpectrumFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except DimensionNotOddPrime as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_DIMENSION
    except (IncompatibleSpectrum, DegenerateSpectrum) as exc:
        print(f"error: incompatible spectrum: {exc}", file=sys.stderr)
        return EXIT_INCOMPATIBLE
    except QClockError as exc:
        print(f"error: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
