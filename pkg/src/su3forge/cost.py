"""Pulse-cost metrics for gate decompositions.

The cost of a pulse ``exp(-i g t)`` is the squared length of ``g t`` in
Gell-Mann coordinates, ``sum_i c_i^2 = Tr((g t)^2) / 2`` with ``lambda_0``
included. A decomposition into several pulses costs the sum of its parts.
"""
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .dod import DodParams, SolutionSet, branch_vectors, match_table1
from .errors import NotHermitian, NotUnitary
from .gellmann import decompose
from .mat3 import as_cmat3, is_hermitian, is_unitary, logm_unitary
from .reporting import DiscrepancyReport

SINGLE_PULSE = "single-pulse"


def _hermitian(g) -> np.ndarray:
    g = as_cmat3(g)
    if not is_hermitian(g, 1e-10):
        raise NotHermitian("cost metrics need a Hermitian generator")
    return g


def hs_cost(g, t: float = 1.0) -> float:
    """``Tr((g t)^2) / 2``."""
    gt = _hermitian(g) * t
    return float(np.trace(gt @ gt).real / 2)


def drive_power_proxy(g) -> float:
    """``c4^2 + c5^2``: weight of the 0<->2 coupling in ``g``."""
    c = decompose(_hermitian(g))
    return float(c[4] ** 2 + c[5] ** 2)


def single_pulse_cost(u, branch_range: int = 1) -> Tuple[float, float, np.ndarray]:
    """Cheapest single generator ``g`` with ``exp(-i g) = u``.

    Returns ``(Tr(g^2)/2, Tr(g^2)/3, g)`` minimized over log branches with
    ``|k_j| <= branch_range``.
    """
    u = as_cmat3(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("single_pulse_cost needs a unitary matrix")
    r = range(-branch_range, branch_range + 1)
    best = None
    for k in ((a, b, c) for a in r for b in r for c in r):
        g = logm_unitary(u, k)
        tr = float(np.trace(g @ g).real)
        if best is None or tr < best[0] - 1e-12:
            best = (tr, g)
    tr, g = best
    return tr / 2, tr / 3, g


@dataclass
class CostRow:
    label: str
    diag_cost: float
    offdiag_cost: float
    total: float
    drive_power_proxy: float

    def to_dict(self):
        return dict(self.__dict__)


def decomposition_cost(p: DodParams, label: str = "") -> CostRow:
    d = hs_cost(p.diagonal_generator())
    o = hs_cost(p.off_diagonal_generator())
    return CostRow(label, d, o, d + o, drive_power_proxy(p.off_diagonal_generator()))


@dataclass
class CostReport:
    per_decomposition: List[CostRow]
    single_pulse: Tuple[float, float]
    ranking: List[str]
    audit: DiscrepancyReport = field(default_factory=lambda: DiscrepancyReport("cost table"))

    @property
    def discrepancies(self) -> List[Tuple[str, object, object]]:
        return [(e.id, e.expected, e.computed) for e in self.audit.mismatches]

    def row(self, label: str) -> CostRow:
        for r in self.per_decomposition:
            if r.label == label:
                return r
        raise KeyError(label)

    def to_dict(self):
        return {
            "per_decomposition": [r.to_dict() for r in self.per_decomposition],
            "single_pulse": {"half_trace": self.single_pulse[0], "third_trace": self.single_pulse[1]},
            "ranking": list(self.ranking),
            "audit": self.audit.to_dict(),
        }


@lru_cache(maxsize=None)
def printed_table2() -> dict:
    text = resources.files("su3forge.data").joinpath("table2.json").read_text()
    return json.loads(text)


def _labelled(solutions) -> List[Tuple[str, DodParams]]:
    if isinstance(solutions, SolutionSet):
        solutions = solutions.solutions
    out = []
    for i, item in enumerate(solutions, start=1):
        if isinstance(item, tuple):
            out.append(item)
            continue
        n = match_table1(item)
        out.append((f"set{n}" if n else f"solution{i}", item))
    return out


def table2_report(solutions: Union[SolutionSet, Sequence], u=None, tol: float = 1e-3,
                  branch_range: int = 1) -> CostReport:
    """Cost every decomposition, add the single pulse, rank, and audit.

    ``solutions`` may be a :class:`SolutionSet`, a list of
    :class:`DodParams` or a list of ``(label, DodParams)``. Unlabelled
    parameter sets that match a printed Walsh-Hadamard set are labelled
    ``setN`` and compared against row N of the printed cost table.
    """
    labelled = _labelled(solutions)
    if u is None:
        u = solutions.target if isinstance(solutions, SolutionSet) else None
    if u is None:
        from .dod import compose_dod
        u = compose_dod(labelled[0][1]) if labelled else np.eye(3)
    rows = [decomposition_cost(p, label) for label, p in labelled]
    half, third, _ = single_pulse_cost(u, branch_range)
    totals = [(r.total, r.label) for r in rows] + [(half, SINGLE_PULSE)]
    ranking = [label for _, label in sorted(totals, key=lambda t: t[0])]

    audit = DiscrepancyReport("cost table")
    printed = {r["row"]: r for r in printed_table2()["rows"]}
    for r in rows:
        if not r.label.startswith("set"):
            continue
        ref = printed[int(r.label[3:])]
        for key, value in (("diag", r.diag_cost), ("offdiag", r.offdiag_cost), ("total", r.total)):
            audit.add(f"table2/row{ref['row']}/{key}", abs(value - ref[key]) <= tol, ref[key], value,
                      f"half-trace cost of {r.label}")
    sp = printed_table2()["single_pulse"]
    audit.add("table2/row6/third_trace", abs(third - sp) <= tol, sp, third, "Tr(g^2)/3")
    audit.add("table2/row6/half_trace", abs(half - sp) <= tol, sp, half, "Tr(g^2)/2")
    return CostReport(rows, (half, third), ranking, audit)
