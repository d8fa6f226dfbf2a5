"""Command-line entry point: ``uebkit <verb> [options]``.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import hadamard as hmod
from . import quasigroup as qmod
from . import ueb as umod
from .linalg import DEFAULT_TOL, ShapeError
from .repro import repro_d6
from .structures import StructureError, latin_axioms, ls_structure, standard_structure
from .teleport import sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
AXIOMS = ("dagger", "unitality", "bialgebra", "duality", "ls1", "ls2", "frobenius")
KINDS = ("pauli", "sm", "minimal", "mub", "gsm")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """12 significant digits, complex numbers as ``re+imj``."""
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    return f"{x:.12g}"


def _num(x: float) -> float:
    return float(f"{x:.12g}")


def _cnum(z: complex) -> list[float]:
    return [_num(z.real), _num(z.imag)]


# input parsing

def _read_json_source(source: str | None):
    if source is None or source == "-":
        text = sys.stdin.read()
    else:
        path = Path(source)
        if not path.exists():
            raise UsageError(f"no such file: {source}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from exc


def parse_latin(spec: str) -> qmod.LatinSquare:
    """``nonassoc6``, ``group:Z6``, inline JSON, or a JSON file path."""
    if spec == "nonassoc6":
        return qmod.nonassociative_6()
    if spec.startswith("group:"):
        return qmod.cayley_table(qmod.GroupSpec.parse(spec[len("group:"):]))
    if spec.lstrip().startswith(("[", "{")):
        return qmod.from_json(json.loads(spec))
    return qmod.from_json(_read_json_source(spec))


def parse_hadamard(spec: str) -> hmod.HadamardFamily:
    """``fourier:<group>``, ``c6``, or ``file:<path>`` / a path."""
    if spec == "c6":
        return hmod.HadamardFamily.replicate(hmod.butson_c6())
    if spec.startswith("fourier:"):
        return hmod.HadamardFamily.replicate(hmod.fourier_matrix(qmod.GroupSpec.parse(spec[len("fourier:"):])))
    if spec.startswith("file:"):
        spec = spec[len("file:"):]
    return hmod.family_from_json(_read_json_source(spec))


def _unwrap_basis(obj) -> umod.ErrorBasis:
    # accept both a bare basis and a --json envelope from `construct`
    if isinstance(obj, dict) and "result" in obj and "dim" not in obj:
        obj = obj["result"]
    if not isinstance(obj, dict) or "dim" not in obj:
        raise UsageError("input is not an error basis JSON object")
    return umod.from_json(obj)


def build_basis(args) -> umod.ErrorBasis:
    kind = args.kind
    if kind == "pauli":
        return umod.pauli_basis(args.theta)
    if kind in ("minimal", "mub"):
        if not args.group:
            raise UsageError(f"--kind {kind} needs --group")
        g = qmod.GroupSpec.parse(args.group)
        return umod.minimal_shift_multiply(g) if kind == "minimal" else umod.mub_basis(g)
    if not (args.latin and args.hadamard):
        raise UsageError(f"--kind {kind} needs --latin and --hadamard")
    L = parse_latin(args.latin)
    fam = parse_hadamard(args.hadamard)
    if kind == "sm":
        return umod.shift_multiply(L, fam)
    if args.k is None:
        raise UsageError("--kind gsm needs --k")
    return umod.generalized_shift_multiply(L, fam, args.k)


def parse_basis_ref(ref: str) -> umod.ErrorBasis:
    """A basis file, or ``pauli``, ``minimal:<group>``, ``mub:<group>``."""
    if ref == "pauli":
        return umod.pauli_basis(0.0)
    kind, _, group = ref.partition(":")
    if kind in ("minimal", "mub") and group:
        g = qmod.GroupSpec.parse(group)
        return umod.minimal_shift_multiply(g) if kind == "minimal" else umod.mub_basis(g)
    return _unwrap_basis(_read_json_source(ref))


# verbs: each returns (ok, result dict, text lines)

def cmd_construct(args):
    basis = build_basis(args)
    return True, umod.to_json(basis), None


def _report_dict(rep: umod.VerificationReport) -> dict:
    return {
        "is_ueb": rep.is_ueb,
        "all_unitary": rep.all_unitary,
        "max_unitarity_defect": _num(rep.max_unitarity_defect),
        "max_orthogonality_defect": _num(rep.max_orthogonality_defect),
    }


def cmd_verify(args):
    basis = _unwrap_basis(_read_json_source(args.file))
    rep = umod.verify(basis, args.tol)
    result = {"dim": basis.dim, **_report_dict(rep)}
    lines = [f"dim: {basis.dim}"] + [f"{k}: {fmt(v) if isinstance(v, float) else v}" for k, v in result.items() if k != "dim"]
    return rep.is_ueb, result, lines


def cmd_axioms(args):
    L = parse_latin(args.latin)
    note = None
    if not L.is_loop():
        L, _ = qmod.normalize_to_loop(L)
        note = "input normalised to a loop before building the structure"
    checks = args.check or list(AXIOMS)
    res = latin_axioms(ls_structure(L), standard_structure(L.order), args.tol)
    result = {name: res[name] for name in checks}
    ok = all(result.values())
    lines = [f"{name}: {val}" for name, val in result.items()]
    payload = {"order": L.order, "checks": result}
    if note:
        payload["note"] = note
        lines.insert(0, note)
    return ok, payload, lines


def cmd_repro(args):
    rep = repro_d6(args.k, args.tol)
    rows = [
        {
            "row": e.row,
            "col": e.col,
            "symbol": e.symbol,
            "coefficient": _cnum(e.coefficient),
            "reference_symbol": e.reference_symbol,
            "reference_coefficient": _cnum(e.reference_coefficient),
            "deviation": _num(e.deviation),
            "flagged": e.flagged,
        }
        for e in rep.entries
    ]
    # pass means: symbol pattern reproduced and the basis is a UEB; flags are reported
    ok = rep.symbols_match and rep.verification.is_ueb
    result = {
        "k": rep.k,
        "scale": _cnum(rep.scale),
        "symbols_match": rep.symbols_match,
        "coefficients_match": rep.coefficients_match,
        "flagged": [f"{r}{c}" for r, c in rep.flagged],
        "verification": _report_dict(rep.verification),
        "table": rows,
    }
    lines = [f"{'pair':<5} {'symbol':<7} {'coefficient':<38} reference"]
    for e in rep.entries:
        mark = "  FLAG" if e.flagged else ""
        lines.append(f"{e.row}{e.col:<4} {e.symbol:<7} {fmt(e.coefficient):<38} {e.reference_symbol} {fmt(e.reference_coefficient)}{mark}")
    lines += [
        f"scale factor: {fmt(rep.scale)}",
        f"symbols match: {rep.symbols_match}",
        f"coefficients match after scaling: {rep.coefficients_match}"
        + (f" (flagged: {', '.join(result['flagged'])})" if rep.flagged else ""),
        f"generalized basis is_ueb: {rep.verification.is_ueb}",
    ]
    return ok, result, lines


def cmd_normalize(args):
    basis = _unwrap_basis(_read_json_source(args.file))
    out, steps = umod.normalize_d2(basis, args.tol)
    deviation = float(np.max(np.abs(out.elements - umod.CANONICAL_PAULI.elements)))
    ok = deviation <= args.tol
    result = {
        "basis": umod.to_json(out),
        "max_deviation_from_canonical": _num(deviation),
        "transcript": [s.as_dict() for s in steps],
    }
    lines = [f"step {n + 1}: {s.name}" for n, s in enumerate(steps)]
    for n, m in enumerate(out.flat()):
        lines.append(f"A{n + 1} = [[{fmt(complex(m[0, 0]))}, {fmt(complex(m[0, 1]))}], [{fmt(complex(m[1, 0]))}, {fmt(complex(m[1, 1]))}]]")
    lines.append(f"max deviation from canonical quadruple: {fmt(deviation)}")
    return ok, result, lines


def cmd_teleport(args):
    basis = parse_basis_ref(args.basis)
    summary = sweep(basis, args.states, args.seed, args.tol)
    result = {
        "dim": basis.dim,
        "states": summary.states,
        "seed": args.seed,
        "min_fidelity": _num(summary.min_fidelity),
        "max_probability_sum_error": _num(summary.max_probability_sum_error),
        "max_probability_error": _num(summary.max_probability_error),
        "outcomes": [
            {"outcome": list(o.outcome), "min_fidelity": _num(o.min_fidelity),
             "min_probability": _num(o.min_probability), "max_probability": _num(o.max_probability)}
            for o in summary.outcomes
        ],
        "passed": summary.passed,
    }
    lines = [f"{'outcome':<9} {'min fidelity':<20} probability range"]
    for o in summary.outcomes:
        lines.append(f"({o.outcome[0]},{o.outcome[1]}){'':<4} {fmt(o.min_fidelity):<20} {fmt(o.min_probability)} .. {fmt(o.max_probability)}")
    lines.append(f"{summary.states} states, seed {args.seed}: {'PASS' if summary.passed else 'FAIL'}")
    return summary.passed, result, lines


def cmd_fingerprint(args):
    basis = _unwrap_basis(_read_json_source(args.file))
    fp = umod.fingerprint(basis)
    return True, {"dim": basis.dim, "fingerprint": [_num(x) for x in fp]}, [" ".join(fmt(x) for x in fp)]


VERBS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "axioms": cmd_axioms,
    "repro-d6": cmd_repro,
    "normalize-d2": cmd_normalize,
    "teleport": cmd_teleport,
    "fingerprint": cmd_fingerprint,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON envelope {verb, ok, result}")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance (default %(default)g)")

    p = argparse.ArgumentParser(prog="uebkit", description="Build and check unitary error bases.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an error basis and print it as JSON")
    c.add_argument("--kind", choices=KINDS, required=True)
    c.add_argument("--group", help="abelian group such as Z6 or Z2xZ2 (minimal, mub)")
    c.add_argument("--latin", help="nonassoc6, group:<spec>, inline JSON or a file (sm, gsm)")
    c.add_argument("--hadamard", help="fourier:<group>, c6 or file:<path> (sm, gsm)")
    c.add_argument("--k", type=int, help="white basis index (gsm)")
    c.add_argument("--theta", type=float, default=0.0, help="phase of the Pauli family (pauli)")

    for verb, helptext in (("verify", "check a basis is a UEB"),
                           ("normalize-d2", "reduce a qubit UEB to the canonical Pauli quadruple"),
                           ("fingerprint", "print an equivalence-invariant summary")):
        v = sub.add_parser(verb, parents=[common], help=helptext)
        v.add_argument("file", nargs="?", help="basis JSON file (default: stdin)")

    a = sub.add_parser("axioms", parents=[common], help="check latin square structure axioms")
    a.add_argument("--latin", required=True)
    a.add_argument("--check", action="append", choices=AXIOMS, help="repeatable; default all")

    r = sub.add_parser("repro-d6", parents=[common], help="reproduce the order-6 generalized table")
    r.add_argument("--k", type=int, default=0)

    t = sub.add_parser("teleport", parents=[common], help="teleport random states through a basis")
    t.add_argument("--basis", required=True, help="basis file, pauli, minimal:<group> or mub:<group>")
    t.add_argument("--states", type=int, default=100)
    t.add_argument("--seed", type=int, default=42)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ok, result, lines = VERBS[args.verb](args)
    except umod.NotAnErrorBasisError as exc:
        # a basis that fails verification is a failed check, not a usage error
        print(f"uebkit {args.verb}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ShapeError, qmod.LatinSquareError, hmod.NotHadamardError, StructureError,
            IndexError, ValueError, KeyError, TypeError) as exc:
        print(f"uebkit {args.verb}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps({"verb": args.verb, "ok": ok, "result": result}, indent=2))
    elif lines is None:
        print(json.dumps(result))
    else:
        print("\n".join(lines))
        print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
