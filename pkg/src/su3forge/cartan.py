"""Cartan (KAK) factorization ``U = U_d U_o1 U_o2`` and removal of the 0<->2
coupling from the middle factor.

Each split fixes one level pair (the "block") and one isolated level. The
involution ``Theta`` is +1 on the block and -1 on the isolated level, so it
fixes the block's SU(2) plus one diagonal generator and negates the four
generators coupling the block to the isolated level. The block carries its
own Pauli-like triple ``(Z, X, Y)``.
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from .errors import BranchSelectionFailed, NotUnitary, UnknownSplit, WrongSplit
from .gellmann import basis, check_cartan_split, decompose
from .mat3 import (
    as_cmat3,
    dagger,
    eig_unitary,
    expm_hermitian_generator,
    frobenius_distance,
    is_unitary,
    principal_phase,
    special_unitary_part,
)
from .reporting import DiscrepancyReport


@dataclass(frozen=True)
class CartanSplit:
    name: str
    k_indices: Tuple[int, ...]
    p_indices: Tuple[int, ...]
    involution_sign: np.ndarray = field(repr=False, compare=False)
    block: Tuple[int, int]
    isolated: int
    z: int
    x: int
    y: int
    d: int
    basis_variant: str

    @property
    def diag_indices(self) -> Tuple[int, int]:
        return (self.z, self.d)

    @property
    def first_indices(self) -> Tuple[int, int]:
        return (self.x, self.y)


def _make(name, block, isolated, z, x, y, d, p, variant):
    theta = np.ones(3)
    theta[isolated] = -1
    sgn = np.diag(theta).astype(np.complex128)
    sgn.setflags(write=False)
    return CartanSplit(name, tuple(sorted((z, x, y, d))), p, sgn, block, isolated,
                       z, x, y, d, variant)


_SPLITS: Dict[str, CartanSplit] = {
    "A": _make("A", (0, 1), 2, 3, 1, 2, 8, (4, 5, 6, 7), "standard"),
    "B": _make("B", (1, 2), 0, 10, 6, 7, 12, (1, 2, 4, 5), "variant10-12"),
    "C": _make("C", (0, 2), 1, 9, 4, 5, 11, (1, 2, 6, 7), "variant9-11"),
}


def split(name: str) -> CartanSplit:
    try:
        return _SPLITS[str(name).upper()]
    except KeyError:
        raise UnknownSplit(f"unknown Cartan split {name!r}; expected A, B or C") from None


def _generator(indices, coeffs) -> np.ndarray:
    g = np.zeros((3, 3), dtype=np.complex128)
    for i, c in zip(indices, coeffs):
        g = g + c * basis(i)
    return g


def _coefficients(h, indices) -> np.ndarray:
    # coefficients over a trace-orthogonal subset with Tr(l_i l_i) = 2
    return np.array([np.trace(h @ basis(i)).real / 2 for i in indices])


# --- KAK ----------------------------------------------------------------------


def _odd_part_residual(g, theta):
    return float(np.linalg.norm(g + theta @ g @ theta)) / 2


def _reorient_minus_one(values, vectors, theta):
    # In a two-dimensional -1 eigenspace any basis is a valid frame; pick one
    # swapped by Theta so that +-pi can be assigned in a Theta-odd way.
    near = np.nonzero(np.abs(values + 1) <= 1e-8)[0]
    if len(near) != 2:
        return vectors
    e = vectors[:, near]
    q = dagger(e) @ theta @ e
    w, r = np.linalg.eigh((q + dagger(q)) / 2)
    if not (w[0] < 0 < w[1]):
        return vectors
    f = e @ r
    out = vectors.copy()
    out[:, near[0]] = (f[:, 0] + f[:, 1]) / np.sqrt(2)
    out[:, near[1]] = (f[:, 1] - f[:, 0]) / np.sqrt(2)
    return out


def _kak(u, s: CartanSplit, tol: float = 1e-9):
    u = as_cmat3(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("kak_factor needs a unitary matrix")
    theta = np.asarray(s.involution_sign)
    m = theta @ dagger(u) @ theta @ u
    values, vectors = eig_unitary(m)
    vectors = _reorient_minus_one(values, vectors, theta)
    base = -principal_phase(values)
    tried = []
    for k in itertools.product((0, -1, 1), repeat=3):
        mu = base + 2 * np.pi * np.asarray(k)
        g = (vectors * mu) @ dagger(vectors)
        g = (g + dagger(g)) / 2
        tried.append((float(_odd_part_residual(g, theta)), float(np.linalg.norm(mu)), k, g))
    tried.sort(key=lambda t: (round(t[0], 10), t[1]))
    res, _, k, g = tried[0]
    if res > tol:
        raise BranchSelectionFailed(
            f"no log branch of Theta u^H Theta u is Theta-odd (best residual {res:.3g})",
            [(t[2], t[0]) for t in tried[:5]])
    h = (g - theta @ g @ theta) / 4
    p = expm_hermitian_generator(h)
    return u @ dagger(p), p, h


def kak_factor(u, s: CartanSplit, tol: float = 1e-9):
    """Split unitary ``u`` as ``k @ p`` with ``Theta k Theta = k`` and
    ``Theta p Theta = p^H``.

    ``M = Theta u^H Theta u`` equals ``p^2``; ``p = exp(-i g / 2)`` where
    ``g`` is the Theta-odd logarithm of ``M`` found among branch vectors with
    entries in {-1, 0, 1}.
    """
    k, p, _ = _kak(u, s, tol)
    return k, p


# --- full decomposition ------------------------------------------------------


@dataclass
class CartanFactors:
    """``exp(i chi) exp(-i(diag)) exp(-i(first)) exp(-i(second))``."""

    global_phase: float
    diag_coeffs: Tuple[float, float]
    first_off: Tuple[float, float]
    second_off: Tuple[float, float, float, float]
    split: CartanSplit
    euler: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def generators(self) -> List[np.ndarray]:
        s = self.split
        return [_generator(s.diag_indices, self.diag_coeffs),
                _generator(s.first_indices, self.first_off),
                _generator(s.p_indices, self.second_off)]

    def factors(self) -> List[np.ndarray]:
        return [expm_hermitian_generator(g) for g in self.generators()]

    def compose(self) -> np.ndarray:
        d, o1, o2 = self.factors()
        return np.exp(1j * self.global_phase) * (d @ o1 @ o2)

    def foreign_support(self) -> float:
        """Largest coefficient of any factor generator outside its declared set."""
        s = self.split
        worst = 0.0
        for g, allowed in zip(self.generators(),
                              (s.diag_indices, s.first_indices, s.p_indices)):
            c = decompose(g, s.basis_variant)
            c[list(allowed)] = 0
            worst = max(worst, float(np.max(np.abs(c))))
        return worst

    def to_dict(self):
        s = self.split
        return {
            "split": s.name,
            "global_phase": self.global_phase,
            "euler": list(self.euler),
            "factors": [
                {"role": "diagonal", "support": list(s.diag_indices), "coeffs": list(self.diag_coeffs)},
                {"role": "first_off", "support": list(s.first_indices), "coeffs": list(self.first_off)},
                {"role": "second_off", "support": list(s.p_indices), "coeffs": list(self.second_off)},
            ],
        }


def compose_factors(f: CartanFactors) -> np.ndarray:
    return f.compose()


def _zyz(k2: np.ndarray) -> Tuple[float, float, float]:
    # k2 = exp(-i a1 Z) exp(-i a2 Y) exp(-i a3 Z) on the block
    a, c = k2[0, 0], k2[1, 0]
    a2 = float(np.arctan2(abs(c), abs(a)))
    if abs(c) <= 1e-12:
        return float(-np.angle(a)), a2, 0.0
    if abs(a) <= 1e-12:
        return float(np.angle(c)), a2, 0.0
    pa, pc = float(np.angle(a)), float(np.angle(c))
    return (-pa + pc) / 2, a2, (-pa - pc) / 2


def cartan_decompose(u, s: CartanSplit) -> CartanFactors:
    """Factor a unitary into diagonal x block-coupling x P-exponential form."""
    u = as_cmat3(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("cartan_decompose needs a unitary matrix")
    chi, su = special_unitary_part(u)
    k, _, h = _kak(su, s)
    second = _coefficients(h, s.p_indices)

    i, j = s.block
    psi = float(np.angle(k[s.isolated, s.isolated]))
    alpha_d = np.sqrt(3.0) * psi / 2
    k2 = np.exp(1j * psi / 2) * k[np.ix_((i, j), (i, j))]
    a1, a2, a3 = _zyz(k2)
    beta_x = a2 * np.sin(2 * a3)
    beta_y = a2 * np.cos(2 * a3)
    beta_z = a1 + a3
    return CartanFactors(float(chi), (float(beta_z), float(alpha_d)),
                         (float(beta_x), float(beta_y)),
                         tuple(float(x) for x in second), s, (a1, a2, a3))



# --- two-photon elimination -------------------------------------------------


@dataclass
class ChainFactor:
    support: Tuple[int, ...]
    coeffs: np.ndarray
    angle: float
    role: str = ""

    def generator(self) -> np.ndarray:
        return self.angle * np.tensordot(self.coeffs, np.stack([basis(i) for i in range(13)]), 1)

    def unitary(self) -> np.ndarray:
        return expm_hermitian_generator(self.generator())

    def to_dict(self):
        return {"role": self.role, "support": list(self.support),
                "coeffs": [float(c) for c in self.coeffs], "angle": float(self.angle)}


def _chain_factor(indices, values, role) -> ChainFactor:
    c = np.zeros(13)
    c[list(indices)] = values
    norm = float(np.linalg.norm(c))
    if norm > 0:
        c = c / norm
    return ChainFactor(tuple(indices), c, norm, role)


@dataclass
class GivensChain:
    factors: List[ChainFactor]
    source: CartanFactors
    naive_three_factor_residual: float

    def compose(self) -> np.ndarray:
        out = np.exp(1j * self.source.global_phase) * np.eye(3, dtype=np.complex128)
        for f in self.factors:
            out = out @ f.unitary()
        return out

    def two_photon_weight(self) -> float:
        return max((abs(f.angle * f.coeffs[4]) + abs(f.angle * f.coeffs[5]) for f in self.factors),
                   default=0.0)

    def to_dict(self):
        return {"global_phase": self.source.global_phase,
                "factors": [f.to_dict() for f in self.factors],
                "naive_three_factor_residual": self.naive_three_factor_residual}


def lambda2_conjugate(j: int, theta: float) -> np.ndarray:
    """``exp(i l2 theta) l_j exp(-i l2 theta)``."""
    r = expm_hermitian_generator(-theta * basis(2))
    return r @ basis(j) @ dagger(r)


def lambda2_identity_report(thetas) -> DiscrepancyReport:
    """Check ``exp(i l2 t) l_j exp(-i l2 t) = l_j cos t + l_k sin t`` for (j, k) in
    {(4, 6), (5, 7)} as published, alongside the form that actually holds,
    ``l_j cos t - l_k sin t``.
    """
    report = DiscrepancyReport("lambda2 conjugation identities")
    for t in thetas:
        for j, k in ((4, 6), (5, 7)):
            lhs = lambda2_conjugate(j, t)
            printed = basis(j) * np.cos(t) + basis(k) * np.sin(t)
            actual = basis(j) * np.cos(t) - basis(k) * np.sin(t)
            err_p = frobenius_distance(lhs, printed)
            err_a = frobenius_distance(lhs, actual)
            report.add(f"lam{j}/printed/{t:.6f}", err_p <= 1e-12, 0.0, err_p)
            report.add(f"lam{j}/sign-corrected/{t:.6f}", err_a <= 1e-12, 0.0, err_a)
    return report


def eliminate_two_photon(f: CartanFactors) -> GivensChain:
    """Rewrite a split-C decomposition without 0<->2 couplings.

    With ``R = exp(i l2 pi/2)``, ``R^H l4 R = l6`` and ``R^H l5 R = l7``, so
    ``exp(-i(b4 l4 + b5 l5)) = R exp(-i(b4 l6 + b5 l7)) R^H``. The chain is
    ``diag, R, exp(-i(b4 l6 + b5 l7)), R^H, P-factor``; every factor is
    diagonal or couples adjacent levels only.
    """
    if f.split.name != "C":
        raise WrongSplit("two-photon elimination applies to split C only")
    s = f.split
    b4, b5 = f.first_off
    diag = _chain_factor(s.diag_indices, f.diag_coeffs, "diagonal")
    last = _chain_factor(s.p_indices, f.second_off, "second_off")
    if b4 == 0 and b5 == 0:
        factors = [diag, _chain_factor((6, 7), (0.0, 0.0), "first_off"), last]
        return GivensChain(factors, f, 0.0)
    mid = _chain_factor((6, 7), (b4, b5), "first_off")
    r = _chain_factor((2,), (-np.pi / 2,), "compensator")
    r_dag = _chain_factor((2,), (np.pi / 2,), "compensator")
    factors = [diag, r, mid, r_dag, last]
    naive = np.exp(1j * f.global_phase) * diag.unitary() @ mid.unitary() @ last.unitary()
    return GivensChain(factors, f, frobenius_distance(naive, f.compose()))


# Published factorization of Walsh-Hadamard as exp(-i H1 t1) exp(-i H2 t2) exp(-i H3 t3)
PRINTED_H_LIST = (
    (np.diag([0.9631, -0.6091, 0.8471]).astype(np.complex128), 6.5239),
    (np.array([[0, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128), 5.9977),
    (np.array([[0, -0.5907j, 0], [0.5907j, 0, -0.8069j], [0, 0.8069j, 0]]), 4.4994),
)


def phase_insensitive_fidelity(a, b) -> float:
    """``|Tr(a^H b)| / 3``; equals 1 iff ``a`` and ``b`` agree up to a global phase."""
    return float(abs(np.trace(dagger(a) @ b)) / 3)


def printed_h_list_report(target=None) -> DiscrepancyReport:
    """Compose the published H/theta list and compare it with Walsh-Hadamard.

    Entries are informational: the comparison is recorded as a report
    entry whether or not it matches.
    """
    from .gates import walsh_hadamard

    w = walsh_hadamard() if target is None else as_cmat3(target)
    prod = np.eye(3, dtype=np.complex128)
    for h, t in PRINTED_H_LIST:
        prod = prod @ expm_hermitian_generator(h * t)
    fid = phase_insensitive_fidelity(w, prod)
    report = DiscrepancyReport("printed Givens factors versus Walsh-Hadamard")
    report.add("gfin/fidelity", fid >= 1 - 1e-3, 1.0, fid,
               "|Tr(W^H G)|/3 of the composed printed factors")
    report.add("gfin/H1-trace", True, None, float(np.trace(PRINTED_H_LIST[0][0]).real),
               "nonzero trace: H1 is not a pure lambda9/lambda11 combination")
    chain = eliminate_two_photon(cartan_decompose(w, split("C")))
    report.add("gfin/three-factor-form", chain.naive_three_factor_residual <= 1e-9, 0.0,
               chain.naive_three_factor_residual,
               "residual of dropping the lambda2 compensators from the chain for W")
    return report
