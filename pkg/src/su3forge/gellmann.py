"""Extended Gell-Mann basis, coefficient extraction and structure constants.

Indices 0..8 are the usual basis with ``lambda_0 = sqrt(2/3) * I``. Indices
9..12 are alternative diagonal elements; ``(9, 11)`` and ``(10, 12)`` each
replace the pair ``(3, 8)``. A coefficient vector always has length 13 and
never mixes the two diagonal pairs.
"""
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterable, Tuple

import numpy as np

from .errors import IndexOutOfRange, NotHermitian
from .mat3 import commutator, is_hermitian
from .reporting import DiscrepancyReport

_R3 = np.sqrt(3.0)

_BASIS = np.zeros((13, 3, 3), dtype=np.complex128)
_BASIS[0] = np.sqrt(2 / 3) * np.eye(3)
_BASIS[1][0, 1] = _BASIS[1][1, 0] = 1
_BASIS[2][0, 1], _BASIS[2][1, 0] = -1j, 1j
_BASIS[3] = np.diag([1, -1, 0])
_BASIS[4][0, 2] = _BASIS[4][2, 0] = 1
_BASIS[5][0, 2], _BASIS[5][2, 0] = -1j, 1j
_BASIS[6][1, 2] = _BASIS[6][2, 1] = 1
_BASIS[7][1, 2], _BASIS[7][2, 1] = -1j, 1j
_BASIS[8] = np.diag([1, 1, -2]) / _R3
_BASIS[9] = np.diag([1, 0, -1])
_BASIS[10] = np.diag([0, 1, -1])
_BASIS[11] = np.diag([1, -2, 1]) / _R3
_BASIS[12] = np.diag([-2, 1, 1]) / _R3
_BASIS.setflags(write=False)

OFF_DIAGONAL = (1, 2, 4, 5, 6, 7)
VARIANTS: Dict[str, Tuple[int, ...]] = {
    "standard": (0, 1, 2, 3, 4, 5, 6, 7, 8),
    "variant9-11": (0, 1, 2, 4, 5, 6, 7, 9, 11),
    "variant10-12": (0, 1, 2, 4, 5, 6, 7, 10, 12),
}


def basis(index: int) -> np.ndarray:
    """Return a copy of ``lambda_index`` for ``index`` in 0..12."""
    if not 0 <= int(index) <= 12:
        raise IndexOutOfRange(f"Gell-Mann index {index} not in 0..12")
    return _BASIS[int(index)].copy()


def _variant_indices(variant: str) -> Tuple[int, ...]:
    try:
        return VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown basis variant {variant!r}") from None


def _real_vec(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _span_coefficients(h: np.ndarray, indices: Iterable[int]):
    # real least squares of h over span{lambda_i}; exact Gram solve for
    # independent sets
    idx = list(indices)
    a = np.stack([_real_vec(_BASIS[i]) for i in idx], axis=1)
    c, *_ = np.linalg.lstsq(a, _real_vec(h), rcond=None)
    residual = float(np.linalg.norm(a @ c - _real_vec(h)))
    return idx, c, residual


def decompose(h, diagonal_variant: str = "standard") -> np.ndarray:
    """Coefficients of Hermitian ``h`` over the chosen nine-element basis.

    Returns a length-13 array; entries outside the chosen variant are zero.
    """
    h = np.asarray(h, dtype=np.complex128)
    if not is_hermitian(h, 1e-10):
        raise NotHermitian("decompose needs a Hermitian matrix")
    idx = _variant_indices(diagonal_variant)
    if diagonal_variant == "standard":
        c = np.zeros(13)
        for i in idx:
            c[i] = np.trace(h @ _BASIS[i]).real / 2
        return c
    # solve the Gram system; these sets are trace-orthogonal internally but
    # not against lambda_3/lambda_8
    gram = np.array([[np.trace(_BASIS[i] @ _BASIS[j]).real for j in idx] for i in idx])
    rhs = np.array([np.trace(h @ _BASIS[i]).real for i in idx])
    c = np.zeros(13)
    c[list(idx)] = np.linalg.solve(gram, rhs)
    return c


def reconstruct(coeffs) -> np.ndarray:
    """Hermitian matrix ``sum_i coeffs[i] * lambda_i``."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (13,):
        raise ValueError("expected 13 coefficients")
    return np.tensordot(c, _BASIS, axes=1)


def _check_index(variant, *indices):
    allowed = _variant_indices(variant)
    for i in indices:
        if i not in allowed:
            raise IndexOutOfRange(f"index {i} not in basis {variant!r}")


def structure_constant_f(i: int, j: int, k: int, basis_variant: str = "standard") -> float:
    """``Tr([l_i, l_j] l_k) / 4i``."""
    _check_index(basis_variant, i, j, k)
    return float((np.trace(commutator(_BASIS[i], _BASIS[j]) @ _BASIS[k]) / 4j).real)


def structure_constant_d(i: int, j: int, k: int, basis_variant: str = "standard") -> float:
    """``Tr({l_i, l_j} l_k) / 4``."""
    _check_index(basis_variant, i, j, k)
    a, b = _BASIS[i], _BASIS[j]
    return float((np.trace((a @ b + b @ a) @ _BASIS[k]) / 4).real)


@dataclass
class StructureConstants:
    basis_variant: str
    f: Dict[Tuple[int, int, int], float] = field(default_factory=dict)
    d: Dict[Tuple[int, int, int], float] = field(default_factory=dict)


@lru_cache(maxsize=None)
def structure_constants(basis_variant: str = "standard", tol: float = 1e-14) -> StructureConstants:
    """All nonzero f and d values over the traceless part of a basis variant."""
    idx = [i for i in _variant_indices(basis_variant) if i != 0]
    sc = StructureConstants(basis_variant)
    for i, j, k in itertools.product(idx, repeat=3):
        f = structure_constant_f(i, j, k, basis_variant)
        d = structure_constant_d(i, j, k, basis_variant)
        if abs(f) > tol:
            sc.f[(i, j, k)] = f
        if abs(d) > tol:
            sc.d[(i, j, k)] = d
    return sc


def check_cartan_split(k_indices, p_indices, tol: float = 1e-12) -> bool:
    """True iff ``[k,k] in K``, ``[p,p] in K`` and ``[p,k] in P`` for the spans."""
    k_set, p_set = sorted(set(k_indices)), sorted(set(p_indices))
    if set(k_set) & set(p_set):
        raise ValueError("the two index sets must be disjoint")
    for i in k_set + p_set:
        if not 1 <= i <= 12:
            raise IndexOutOfRange(f"split index {i} not in 1..12")

    def closed(a_set, b_set, target):
        for a, b in itertools.product(a_set, b_set):
            h = commutator(_BASIS[a], _BASIS[b]) / 1j
            if _span_coefficients(h, target)[2] > tol:
                return False
        return True

    return (closed(k_set, k_set, k_set)
            and closed(p_set, p_set, k_set)
            and closed(p_set, k_set, p_set))


# --- audit of the printed appendix -------------------------------------------

_SYMBOLS = {
    "1": 1.0, "-1": -1.0, "2": 2.0, "-2": -2.0,
    "1/2": 0.5, "-1/2": -0.5,
    "r3": _R3, "-r3": -_R3, "r3/2": _R3 / 2, "-r3/2": -_R3 / 2,
    "1/r3": 1 / _R3, "-1/r3": -1 / _R3,
    "1/(2r3)": 1 / (2 * _R3), "-1/(2r3)": -1 / (2 * _R3),
}


def symbol_value(s: str) -> float:
    return float(_SYMBOLS[s])


@lru_cache(maxsize=None)
def printed_appendix() -> dict:
    """The printed constant lists and commutator tables (fixture data)."""
    text = resources.files("su3forge.data").joinpath("appendix_constants.json").read_text()
    return json.loads(text)


def _canonical(triple):
    return tuple(sorted(triple))


def verify_constant_tables(tol: float = 1e-12) -> DiscrepancyReport:
    """Recompute every printed f/d value and commutator cell from the trace formulas.

    Entry ids look like ``f/standard/1,2,3``, ``d/variant9-11/9,9,11``,
    ``missing-f/variant10-12/...`` and ``comm/standard/5,7``.
    """
    data = printed_appendix()
    report = DiscrepancyReport("appendix structure constants")
    for kind, func in (("f", structure_constant_f), ("d", structure_constant_d)):
        for variant, rows in data[kind].items():
            covered = set()
            for i, j, k, sym in rows:
                printed = symbol_value(sym)
                computed = func(i, j, k, variant)
                covered.add(_canonical((i, j, k)))
                report.add(f"{kind}/{variant}/{i},{j},{k}", abs(printed - computed) <= tol,
                           printed, computed)
            table = getattr(structure_constants(variant), kind)
            for triple in sorted({_canonical(t) for t in table}):
                if triple not in covered:
                    report.add(f"missing-{kind}/{variant}/{','.join(map(str, triple))}", False,
                               None, table[triple], "nonzero value absent from printed list")
    for variant, tab in data["commutators"].items():
        order = tab["order"]
        for a, row in zip(order, tab["rows"]):
            for b, cell in zip(order, row):
                printed = np.zeros((3, 3), dtype=np.complex128)
                for sym, k in cell:
                    printed += 1j * symbol_value(sym) * _BASIS[k]
                actual = commutator(_BASIS[a], _BASIS[b])
                idx, coef, _ = _span_coefficients(actual / 1j, order)
                computed = [[round(float(c), 12), i] for c, i in zip(coef, idx) if abs(c) > 1e-12]
                report.add(f"comm/{variant}/{a},{b}",
                           np.linalg.norm(printed - actual) <= tol,
                           [[symbol_value(s), k] for s, k in cell], computed,
                           "entries are [c, k] meaning 1j*c*lambda_k")
    return report
