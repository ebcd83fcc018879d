"""Command-line front end.

    scfsolve analyze MODEL      graph facts: claws, simplicial cliques, holes, closures
    scfsolve solve MODEL        sectors, single-particle energies and the full spectrum
    scfsolve verify MODEL       everything above plus exact diagonalization and operator identities
    scfsolve realize GRAPH      write a Hamiltonian whose frustration graph is GRAPH

MODEL is a Hamiltonian file (``<coeff> <pauli>`` per line) or a built-in model
such as ``builtin:example-1-2`` or ``builtin:xy-chain?n=6&delta=0.3``.

Exit codes: 0 success, 1 usage or I/O error, 2 not simplicial claw-free,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, List, Optional

from . import ed, report, solver
from .frustration import GraphFormatError, fiducial_realization, load_graph
from .models import UnknownModelError, load_builtin
from .pauli import Hamiltonian, PauliParseError, load_hamiltonian

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_SCF = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    pass


def load_model(name: str) -> Hamiltonian:
    if name.startswith("builtin:"):
        return load_builtin(name)
    return load_hamiltonian(name)


def _clean(obj: Any) -> Any:
    """Replace non-finite floats so the output is strict JSON."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(rep: Any) -> str:
    return json.dumps(_clean(rep), indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        try:
            with open(output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {output}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _positive(kind):
    def parse(text: str):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {text}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="scfsolve", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        p.add_argument("--max-hole-len", type=_positive(int), default=None, help="longest even hole to enumerate")

    p = sub.add_parser("analyze", help="frustration-graph analysis")
    p.add_argument("model")
    common(p)

    for name, text in (("solve", "analytic free-fermion solution"), ("verify", "solution cross-checked against ED")):
        p = sub.add_parser(name, help=text)
        p.add_argument("model")
        common(p)
        p.add_argument("--tol", type=_positive(float), default=1e-8, help="numerical tolerance (default 1e-8)")
        p.add_argument("--qubit-cap", type=_positive(int), default=ed.DEFAULT_QUBIT_CAP, help="largest register for dense matrices")
        p.add_argument("--sector-method", choices=("ed", "algebraic"), default="ed")

    p = sub.add_parser("realize", help="Hamiltonian with a given frustration graph")
    p.add_argument("graph")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--b", default=None, help="comma-separated couplings, one per vertex (default all 1)")
    return ap


def _not_scf(command: str, exc: solver.NotSCFError) -> str:
    return dumps({"schema": report.SCHEMA, "command": command, "error": "not_scf", "message": str(exc), "witness": exc.witness})


def run(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "realize":
            G = load_graph(args.graph)
            b = None
            if args.b is not None:
                b = [float(v) for v in args.b.split(",") if v]
                if len(b) != len(G):
                    raise UsageError(f"--b needs {len(G)} values, got {len(b)}")
            _emit(fiducial_realization(G, b).to_text(), args.output)
            return EXIT_OK
        H = load_model(args.model)
        if args.command == "analyze":
            rep = report.analyze_report(H, args.max_hole_len)
            _emit(dumps(rep), args.output)
            return EXIT_OK if rep["scf"] else EXIT_NOT_SCF
        try:
            if args.command == "solve":
                rep = report.solve_report(H, args.sector_method, args.tol, args.qubit_cap, args.max_hole_len)
                _emit(dumps(rep), args.output)
                return EXIT_OK
            rep = report.verify_report(H, args.tol, args.qubit_cap, args.sector_method, args.max_hole_len)
        except solver.NotSCFError as exc:
            _emit(_not_scf(args.command, exc), args.output)
            return EXIT_NOT_SCF
        _emit(dumps(rep), args.output)
        return EXIT_OK if rep["ok"] else EXIT_VERIFY
    except (PauliParseError, GraphFormatError, UnknownModelError, UsageError, ed.QubitCapError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except solver.SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
