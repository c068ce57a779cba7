"""``su3-forge`` command line: decompositions, table audits, costs, symmetry,
structure constants and random gates, all with JSON output.

Exit codes: 0 success, 1 no solution or failed check, 2 invalid input.
"""
import argparse
import json
import sys
from typing import List, Optional

import numpy as np
from scipy.linalg import polar

from . import __version__
from .audit import SECTIONS, run_sections
from .cartan import cartan_decompose, eliminate_two_photon, split
from .cost import table2_report
from .dod import DodParams, SolveConfig, SolutionSet, solve_dod, table1_params
from .errors import BranchSelectionFailed, NoRelationFound, NoSolutionFound, Su3ForgeError
from .gates import GATES, gate
from .gellmann import VARIANTS, structure_constants
from .mat3 import frobenius_distance, haar_random_unitary
from .symmetry import commutant, relate_solutions, wh_family_theta, wh_symmetry

SCHEMA_VERSION = "su3-forge/1"

# inputs further than this from unitary are rejected; closer ones are
# projected onto the nearest unitary
UNITARITY_TOL = 1e-6


class InputError(Exception):
    pass


# --- JSON documents ----------------------------------------------------------


def matrix_document(m, label: Optional[str] = None) -> dict:
    doc = {"rows": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]}
    if label is not None:
        doc["label"] = label
    return doc


def parse_matrix_document(doc) -> np.ndarray:
    try:
        rows = doc["rows"]
        m = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not a matrix document: {exc}") from None
    if m.shape != (3, 3) or not np.all(np.isfinite(m)):
        raise InputError("matrix document must hold a finite 3x3 matrix")
    return m


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x) + 0.0  # drops the sign of -0.0
    return x


def report_document(command: str, inputs: dict, results, discrepancies=None) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "command": command,
        "inputs": _jsonable(inputs),
        "results": _jsonable(results),
        "discrepancies": _jsonable(discrepancies or []),
    }


def _emit(doc: dict, output: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _load_unitary(args):
    if args.input:
        doc = _read_json(args.input)
        if isinstance(doc, dict) and "rows" not in doc and "matrices" in doc.get("results", {}):
            doc = doc["results"]["matrices"][0]
        m = parse_matrix_document(doc)
        source = {"input": args.input}
    else:
        m = gate(args.gate)
        source = {"gate": args.gate}
    defect = frobenius_distance(m.conj().T @ m, np.eye(3))
    if defect > UNITARITY_TOL:
        raise InputError(f"input is not unitary (|U^H U - I| = {defect:.3g})")
    if defect > 0:
        m, _ = polar(m)
    source["unitarity_defect"] = defect
    return m, source


# --- commands ----------------------------------------------------------------


def cmd_decompose(args) -> int:
    u, inputs = _load_unitary(args)
    inputs.update(method=args.method)
    if args.method == "dod":
        cfg = SolveConfig(starts=args.starts, branch_range=args.branches, tol=args.tol,
                          seed=args.seed)
        inputs.update(starts=args.starts, branches=args.branches, tol=args.tol, seed=args.seed)
        try:
            sols = solve_dod(u, cfg)
        except NoSolutionFound as exc:
            _emit(report_document("decompose", inputs, {"count": 0, "solutions": [],
                                                        "message": str(exc)}), args.output)
            return 1
        results = dict(sols.to_dict(), count=len(sols))
    elif args.method == "givens":
        chain = eliminate_two_photon(cartan_decompose(u, split("C")))
        results = dict(chain.to_dict(), round_trip_residual=frobenius_distance(chain.compose(), u),
                       two_photon_weight=chain.two_photon_weight())
    else:
        f = cartan_decompose(u, split(args.method[-1]))
        results = dict(f.to_dict(), round_trip_residual=frobenius_distance(f.compose(), u),
                       foreign_support=f.foreign_support())
    _emit(report_document("decompose", inputs, results), args.output)
    return 0


def cmd_verify_paper(args) -> int:
    reports = run_sections(args.section)
    discrepancies = []
    for name, rep in reports.items():
        for e in rep.mismatches:
            discrepancies.append({"section": name, "id": e.id, "expected": e.expected,
                                  "computed": e.computed, "documented": e.documented,
                                  "detail": e.detail})
    ok = all(r.passed for r in reports.values())
    results = {"passed": ok, "sections": {n: r.to_dict() for n, r in reports.items()}}
    _emit(report_document("verify-paper", {"section": args.section}, results, discrepancies),
          args.output)
    return 0 if ok else 1


def _load_solutions(path: str):
    doc = _read_json(path)
    body = doc.get("results", doc) if isinstance(doc, dict) else {"solutions": doc}
    try:
        params = [DodParams.from_dict(s) for s in body["solutions"]]
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise InputError(f"not a solutions document: {exc}") from None
    target = parse_matrix_document({"rows": body["target"]}) if "target" in body else None
    return params, target


def cmd_cost(args) -> int:
    params, target = _load_solutions(args.input)
    if not params:
        raise InputError("solutions document holds no solutions")
    if target is None:
        target = gate(args.gate)
    report = table2_report(SolutionSet(params, [0.0] * len(params), target), target,
                           branch_range=args.branches)
    discrepancies = [{"id": e.id, "expected": e.expected, "computed": e.computed}
                     for e in report.audit.mismatches]
    _emit(report_document("cost", {"input": args.input, "branches": args.branches},
                          report.to_dict(), discrepancies), args.output)
    return 0


def _parse_floats(text: str, n: int) -> List[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"expected {n} comma-separated numbers, got {text!r}") from None
    if len(values) != n:
        raise InputError(f"expected {n} comma-separated numbers, got {text!r}")
    return values


def _parse_set(text: str) -> int:
    t = text.strip().lower().removeprefix("set")
    if not t.isdigit() or not 1 <= int(t) <= 5:
        raise InputError(f"unknown parameter set {text!r}; expected 1..5")
    return int(t)


def cmd_symmetry(args) -> int:
    u = gate(args.gate)
    if args.relate:
        parts = args.relate.split(",")
        if len(parts) != 2:
            raise InputError("--relate expects two set labels, e.g. 5,2")
        a, b = (_parse_set(s) for s in parts)
        sets = table1_params()
        try:
            rel = relate_solutions(sets[a - 1], sets[b - 1], u)
        except NoRelationFound as exc:
            _emit(report_document("symmetry", {"gate": args.gate, "relate": [a, b]},
                                  {"related": False, "message": str(exc)}), args.output)
            return 1
        _emit(report_document("symmetry", {"gate": args.gate, "relate": [a, b]},
                              dict(rel.to_dict(), related=True)), args.output)
        return 0
    theta = _parse_floats(args.theta, 3)
    if args.gate == "wh":
        t = wh_symmetry(theta, as_printed=args.as_printed)
        eig_theta = wh_family_theta(theta)
    else:
        t = commutant(u).sample(theta)
        eig_theta = theta
    results = {
        "matrix": matrix_document(t),
        "eigenframe_theta": eig_theta,
        "commutator_residual": frobenius_distance(t @ u, u @ t),
    }
    _emit(report_document("symmetry", {"gate": args.gate, "theta": theta,
                                       "as_printed": args.as_printed}, results), args.output)
    return 0


def cmd_structconst(args) -> int:
    sc = structure_constants(args.basis)
    results = {
        "basis": args.basis,
        "f": [[i, j, k, v] for (i, j, k), v in sorted(sc.f.items()) if i < j < k],
        "d": [[i, j, k, v] for (i, j, k), v in sorted(sc.d.items()) if i <= j <= k],
    }
    _emit(report_document("structconst", {"basis": args.basis}, results), args.output)
    return 0


def cmd_random(args) -> int:
    if args.count < 0:
        raise InputError("--count must be non-negative")
    mats = [matrix_document(haar_random_unitary([args.seed, i]), f"haar-{args.seed}-{i}")
            for i in range(args.count)]
    _emit(report_document("random", {"count": args.count, "seed": args.seed},
                          {"matrices": mats}), args.output)
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="su3-forge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p):
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        return p

    p = with_output(sub.add_parser("decompose", help="decompose a gate"))
    p.add_argument("--method", required=True,
                   choices=["dod", "cartan-a", "cartan-b", "cartan-c", "givens"])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="matrix document (JSON)")
    src.add_argument("--gate", choices=sorted(GATES))
    p.add_argument("--starts", type=int, default=8, help="start points per phase axis")
    p.add_argument("--branches", type=int, default=1, help="log branch range |k_j| <= B")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = with_output(sub.add_parser("verify-paper", help="audit the published tables"))
    p.add_argument("--section", default="all", choices=list(SECTIONS) + ["all"])
    p.set_defaults(func=cmd_verify_paper)

    p = with_output(sub.add_parser("cost", help="cost a set of decompositions"))
    p.add_argument("--input", required=True, help="solutions document (decompose output)")
    p.add_argument("--gate", default="wh", choices=sorted(GATES),
                   help="target when the document carries none")
    p.add_argument("--branches", type=int, default=1)
    p.set_defaults(func=cmd_cost)

    p = with_output(sub.add_parser("symmetry", help="commuting unitaries and set relations"))
    p.add_argument("--gate", default="wh", choices=sorted(GATES))
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--theta", help="t1,t2,t3")
    mode.add_argument("--relate", help="two Walsh-Hadamard parameter sets, e.g. 5,2")
    p.add_argument("--as-printed", action="store_true",
                   help="use the published closed form verbatim (wh only)")
    p.set_defaults(func=cmd_symmetry)

    p = with_output(sub.add_parser("structconst", help="nonzero f and d constants"))
    p.add_argument("--basis", default="standard", choices=sorted(VARIANTS))
    p.set_defaults(func=cmd_structconst)

    p = with_output(sub.add_parser("random", help="Haar-random unitaries"))
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, Su3ForgeError, ValueError) as exc:
        if isinstance(exc, (NoSolutionFound, NoRelationFound, BranchSelectionFailed)):
            print(f"su3-forge: {exc}", file=sys.stderr)
            return 1
        print(f"su3-forge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
