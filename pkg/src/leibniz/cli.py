"""Command-line front end.

Exit codes: 0 success, 1 identity/role violation or unknown id, 2 unreadable
input, 3 ambiguous spectrum clustering.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import catalog
from .algebra import (
    DEFAULT_SEED,
    LeibnizAlgebra,
    check_leibniz,
    derived_series,
    engel_check,
    l_ann_ideal,
    leibniz_residuals,
    lower_central_series,
    right_annihilator,
)
from .automorphisms import multiplicative_jc
from .derivations import (
    additive_jc,
    characteristically_nilpotent,
    derivation_defect,
    derivation_space,
    nonsingular_derivation_analysis,
)
from .errors import (
    ClusterAmbiguity,
    LeibnizError,
    NotADerivation,
    NotAnAutomorphism,
    NotUnipotent,
    TheoremViolation,
    UnknownId,
)
from .io import FormatError, algebra_to_dict, clean_float, dump_json, load_algebra, load_matrix, matrix_to_dict
from .linalg import DEFAULT_TOL, Tolerance

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_AMBIGUOUS = 0, 1, 2, 3

CLUSTER_HINT = (
    "eigenvalues could not be grouped into characteristic subspaces; "
    "try a larger --eps-cluster if nearby eigenvalues should coincide, or a smaller one to separate them"
)


def _sig(x: float) -> float:
    """Residuals rounded to 3 significant digits, for byte-stable reports."""
    return clean_float(float(f"{float(x):.3e}"), 300)


def _tolerance(args) -> Tolerance:
    return Tolerance(eps_rank=args.eps_rank, eps_cluster=args.eps_cluster, eps_residual=args.tol)


def _load(source: str) -> LeibnizAlgebra:
    if source.startswith("catalog:"):
        return catalog.stock(source[len("catalog:"):]).algebra
    return load_algebra(source)


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _print_violations(violations) -> None:
    for v in violations:
        print(f"violation at (i, j, k) = ({v.i}, {v.j}, {v.k}): residual {v.residual:.3e}")


def _format_matrix(M: np.ndarray) -> str:
    def fmt(z):
        z = complex(clean_float(z.real, 10), clean_float(z.imag, 10))
        return f"{z.real:.6g}" if z.imag == 0 else f"{z.real:.6g}{z.imag:+.6g}j"

    cells = [[fmt(z) for z in row] for row in M]
    width = max(len(s) for row in cells for s in row)
    return "\n".join("  " + " ".join(s.rjust(width) for s in row) for row in cells)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    tol = _tolerance(args)
    A = _load(args.file)
    violations = check_leibniz(A, tol)
    if violations:
        _print_violations(violations)
        print(f"not a Leibniz algebra: {len(violations)} violating triple(s)")
        return EXIT_VIOLATION
    print(f"ok: Leibniz identity holds (dim {A.dim})")
    return EXIT_OK


def analysis_report(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> dict:
    """The ``analyze`` report as a plain dict with a fixed key order."""
    space = derivation_space(A, tol)
    nonsing = nonsingular_derivation_analysis(A, tol, seed=seed, space=space)
    charnil = characteristically_nilpotent(A, tol, seed=seed, space=space)
    derived, lower = derived_series(A), lower_central_series(A)
    l_ann = l_ann_ideal(A)
    return {
        "dim": A.dim,
        "leibniz_ok": True,
        "is_lie": A.is_lie(tol),
        "is_nilpotent": lower.reaches_zero,
        "is_solvable": derived.reaches_zero,
        "engel_nilpotent": engel_check(A, tol, seed=seed),
        "derived_series": list(derived.dims),
        "lower_central_series": list(lower.dims),
        "derivation_dim": space.dim,
        "characteristically_nilpotent": bool(charnil),
        "nonsingular_witness": None if nonsing.witness is None else matrix_to_dict(nonsing.witness, 10),
        "right_annihilator_dim": right_annihilator(A, tol).dim,
        "l_ann_dim": l_ann.dim,
        "residuals": {
            "leibniz": _sig(leibniz_residuals(A.c).max()),
            "derivation_basis": _sig(max((derivation_defect(A, D) for D in space.basis), default=0.0)),
        },
        "samples": nonsing.samples_tested,
        "seed": seed,
        "tolerance": {"eps_rank": tol.eps_rank, "eps_cluster": tol.eps_cluster, "eps_residual": tol.eps_residual},
    }


def _print_report(rep: dict) -> None:
    for key, value in rep.items():
        if key == "nonsingular_witness":
            if value is None:
                print("nonsingular_witness: none")
            else:
                M = np.array([complex(*e) for e in value["entries"]]).reshape(value["rows"], value["cols"])
                print("nonsingular_witness:")
                print(_format_matrix(M))
        elif isinstance(value, dict):
            print(f"{key}: " + ", ".join(f"{k}={v}" for k, v in value.items()))
        else:
            print(f"{key}: {value}")


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    A = _load(args.file)
    violations = check_leibniz(A, tol)
    if violations:
        _print_violations(violations)
        return EXIT_VIOLATION
    try:
        rep = analysis_report(A, tol, args.seed)
    except TheoremViolation as exc:
        _err(f"consistency check failed: {exc}")
        return EXIT_VIOLATION
    if args.json:
        print(dump_json(rep))
    else:
        _print_report(rep)
    return EXIT_OK


def _jc(args, kind: str) -> int:
    tol = _tolerance(args)
    A = _load(args.file)
    if check_leibniz(A, tol):
        _err("input is not a Leibniz algebra (run 'check' for details)")
        return EXIT_VIOLATION
    M = load_matrix(args.map)
    if M.shape != (A.dim, A.dim):
        _err(f"map is {M.shape[0]}x{M.shape[1]}, algebra has dimension {A.dim}")
        return EXIT_PARSE
    if kind == "der":
        res = additive_jc(A, M, tol)
        names, factors = ("D0", "T"), (res.d0, res.t)
    else:
        res = multiplicative_jc(A, M, tol)
        names, factors = ("A0", "T"), (res.a0, res.t)
    ok = res.within(tol)
    if args.json:
        out = {names[0]: matrix_to_dict(factors[0], 10), names[1]: matrix_to_dict(factors[1], 10),
               "residuals": {k: _sig(v) for k, v in res.residuals.items()}, "ok": ok}
        print(dump_json(out))
    else:
        for name, F in zip(names, factors):
            print(f"{name} =")
            print(_format_matrix(F))
        for k, v in res.residuals.items():
            print(f"residual {k}: {v:.3e}")
        print("ok" if ok else f"residuals exceed {tol.eps_residual:g}")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_jc_der(args) -> int:
    return _jc(args, "der")


def cmd_jc_aut(args) -> int:
    return _jc(args, "aut")


def cmd_catalog(args) -> int:
    if args.action == "list":
        for entry in catalog.entries():
            f = entry.facts
            tags = [t for t in ("is_nilpotent", "is_solvable", "is_lie", "characteristically_nilpotent") if f.get(t)]
            tags = " ".join(t.removeprefix("is_") for t in tags)
            print(f"{entry.id}\tdim={entry.algebra.dim}\t{tags}\t{entry.summary}")
        return EXIT_OK
    if not args.id:
        _err("catalog show needs an id")
        return EXIT_PARSE
    text = dump_json(algebra_to_dict(catalog.stock(args.id).algebra))
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="leibniz", description="Leibniz algebras from structure constants.")
    sub = parser.add_subparsers(dest="command", required=True)

    def tolerances(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL.eps_residual, help="residual tolerance")
        p.add_argument("--eps-rank", type=float, default=DEFAULT_TOL.eps_rank, help="relative rank threshold")
        p.add_argument("--eps-cluster", type=float, default=DEFAULT_TOL.eps_cluster,
                       help="eigenvalue clustering radius")

    p = sub.add_parser("check", help="verify the Leibniz identity")
    p.add_argument("file")
    tolerances(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="structure report for a file or catalog:<id>")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    tolerances(p)
    p.set_defaults(func=cmd_analyze)

    for name, func, what in (("jc-der", cmd_jc_der, "D = D0 + T for a derivation"),
                             ("jc-aut", cmd_jc_aut, "A = A0 exp(T) for an automorphism")):
        p = sub.add_parser(name, help=what)
        p.add_argument("file")
        p.add_argument("--map", required=True, help="matrix JSON file")
        p.add_argument("--json", action="store_true")
        tolerances(p)
        p.set_defaults(func=func)

    p = sub.add_parser("catalog", help="built-in fixture algebras")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?")
    p.add_argument("--emit", help="write the JSON to this file instead of stdout")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UnknownId as exc:
        _err(exc.args[0] if exc.args else str(exc))
        return EXIT_VIOLATION if args.command == "catalog" else EXIT_PARSE
    except FormatError as exc:
        _err(str(exc))
        return EXIT_PARSE
    except (NotADerivation, NotAnAutomorphism, NotUnipotent) as exc:
        _err(str(exc))
        return EXIT_VIOLATION
    except ClusterAmbiguity as exc:
        _err(f"{exc}\n{CLUSTER_HINT}")
        return EXIT_AMBIGUOUS
    except (LeibnizError, ValueError) as exc:
        _err(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
