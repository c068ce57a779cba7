"""Symmetries of a gate and the redundancy they create in its decompositions.

A unitary ``T`` commuting with ``U`` maps one diagonal/off-diagonal
factorization of ``U`` onto another factorization of the same gate:
``U = T U T^H = (T U_d T^H)(T U_o T^H)``. For a gate with a non-degenerate
spectrum the commuting unitaries form a 3-torus of phases in its eigenframe.
"""
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .dod import DodParams, compose_dod
from .errors import DegenerateSpectrum, NoRelationFound
from .gates import walsh_hadamard
from .mat3 import (
    as_cmat3,
    dagger,
    eig_hermitian,
    eig_unitary,
    expm_hermitian_generator,
    frobenius_distance,
    principal_phase,
)

THIRD_TURN = 2 * np.pi / 3


@dataclass(frozen=True)
class CommutantFamily:
    """``T(theta) = V diag(exp(-i theta)) V^H`` for the eigenframe ``V`` of ``target``."""

    frame: np.ndarray
    target: np.ndarray
    eigenvalues: np.ndarray

    def sample(self, theta: Sequence[float]) -> np.ndarray:
        phases = np.exp(-1j * np.asarray(theta, dtype=float))
        return (self.frame * phases) @ dagger(self.frame)

    def theta_for_labels(self, labels: Sequence[complex], theta: Sequence[float],
                         sign: int = -1) -> np.ndarray:
        """Translate angles attached to eigenvalues into this family's ordering.

        ``labels[j]`` is the eigenvalue of the target that ``theta[j]`` is
        attached to. With ``sign=+1`` the angles are taken to multiply
        ``exp(+i theta)`` rather than ``exp(-i theta)``.
        """
        out = np.zeros(3)
        used = set()
        for label, t in zip(labels, theta):
            j = int(np.argmin(np.abs(self.eigenvalues - label)))
            if j in used or abs(self.eigenvalues[j] - label) > 1e-8:
                raise ValueError(f"eigenvalue {label} does not label a distinct eigenvector")
            used.add(j)
            out[j] = -t if sign > 0 else t
        return out


def commutant(u, gap_tol: float = 1e-8) -> CommutantFamily:
    """Torus of unitaries commuting with a non-degenerate unitary ``u``."""
    u = as_cmat3(u)
    values, frame = eig_unitary(u)
    for a, b in itertools.combinations(range(3), 2):
        if abs(values[a] - values[b]) <= gap_tol:
            raise DegenerateSpectrum("commutant of a degenerate unitary is not a torus")
    return CommutantFamily(frame, u, values)


# Eigenvalues of W attached to theta_1, theta_2, theta_3 in the closed-form
# WH symmetry family (eigenvectors (0,-1,1), (1-sqrt3,1,1), (1+sqrt3,1,1)).
WH_THETA_LABELS = (1j, -1.0 + 0j, 1.0 + 0j)


def wh_symmetry(theta: Sequence[float], as_printed: bool = False) -> np.ndarray:
    """Closed-form family of unitaries commuting with Walsh-Hadamard.

    Uses ``exp(+i theta_j)`` with the labeling of ``WH_THETA_LABELS``.
    ``as_printed=True`` reproduces the published matrix verbatim, whose
    (0, 0) entry carries a sign error on the ``theta_2`` term; it then
    fails to commute with W.
    """
    r3 = np.sqrt(3.0)
    e1, e2, e3 = np.exp(1j * np.asarray(theta, dtype=float))
    sign = -1.0 if as_printed else 1.0
    a = (sign * (3 - r3) * e2 + (3 + r3) * e3) / 6
    o = (-e2 + e3) / (2 * r3)
    d = ((3 + r3) * e1 + (2 + r3) * e2 + e3) / (2 * (3 + r3))
    x = (-(3 + r3) * e1 + (2 + r3) * e2 + e3) / (2 * (3 + r3))
    return np.array([[a, o, o], [o, d, x], [o, x, d]])


def wh_family_theta(theta: Sequence[float]) -> np.ndarray:
    """Angles of :func:`wh_symmetry` expressed for ``commutant(W).sample``."""
    return commutant(walsh_hadamard()).theta_for_labels(WH_THETA_LABELS, theta, sign=+1)


@dataclass
class ConjugationResult:
    factors: Tuple[np.ndarray, np.ndarray]
    still_dod_form: bool
    params: Optional[DodParams]


def conjugate_decomposition(t, p: DodParams, tol: float = 1e-9) -> ConjugationResult:
    """Apply ``X -> T X T^H`` to both factors of a decomposition."""
    t = as_cmat3(t)
    th = dagger(t)
    g_d = t @ p.diagonal_generator() @ th
    g_o = t @ p.off_diagonal_generator() @ th
    diag_factor = t @ np.diag(np.exp(-1j * np.asarray(p.phi, dtype=float))) @ th
    off_factor = t @ expm_hermitian_generator(p.off_diagonal_generator()) @ th

    def offdiag_norm(m):
        return float(np.linalg.norm(m - np.diag(np.diagonal(m))))

    still = offdiag_norm(diag_factor) <= tol and float(np.max(np.abs(np.diagonal(g_o)))) <= tol
    params = None
    if still:
        if offdiag_norm(g_d) <= tol:
            phi = np.real(np.diagonal(g_d))
        else:
            phi = np.mod(-principal_phase(np.diagonal(diag_factor)), 2 * np.pi)
        g_o = g_o - np.diag(np.diagonal(g_o))
        params = DodParams.from_generators(np.diag(phi), g_o)
    return ConjugationResult((diag_factor, off_factor), still, params)


@dataclass
class RelationReport:
    conjugator: Tuple[int, int, int]
    permutation: Tuple[int, int, int]
    scale: float
    shifts: Tuple[float, float, float]
    diagonal_shift: Tuple[float, float, float]
    eigenvalues_a: Tuple[float, float, float]
    eigenvalues_b: Tuple[float, float, float]
    fixed_point_eigenvalues: Optional[Tuple[float, float, float]]
    residual: float

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def _perm_matrix(perm) -> np.ndarray:
    m = np.zeros((3, 3), dtype=np.complex128)
    for i, j in enumerate(perm):
        m[j, i] = 1
    return m


def _snap_third_turns(x: np.ndarray, max_steps: int = 3):
    n = np.round(x / THIRD_TURN)
    ok = np.all(np.abs(n) <= max_steps)
    return n * THIRD_TURN, float(np.max(np.abs(x - n * THIRD_TURN))), bool(ok)


def relate_solutions(pa: DodParams, pb: DodParams, u, tol: float = 1e-2,
                     scales=(1.0, -2.0, -0.5)) -> RelationReport:
    """Explain how two decompositions of ``u`` are related.

    Searches level permutations ``T`` commuting with ``u`` and generator
    scales ``s`` such that ``G_o(b) = s T G_o(a) T^H``, with diagonal parts
    differing by multiples of 2*pi/3 that sum to a centre element. For each
    eigenvalue ``g`` of ``G_o(a)`` the shift ``delta`` solving
    ``g = s*g + delta`` is reported, together with ``delta / (1 - s)``.
    """
    u = as_cmat3(u)
    for p in (pa, pb):
        if frobenius_distance(compose_dod(p), u) > 5e-3:
            raise ValueError("both parameter sets must compose to u within 5e-3")
    ga, gb = pa.off_diagonal_generator(), pb.off_diagonal_generator()
    val_a, vec_a = eig_hermitian(ga)
    val_b, vec_b = eig_hermitian(gb)

    best = None
    for perm in itertools.permutations(range(3)):
        t = _perm_matrix(perm)
        if frobenius_distance(t @ u @ dagger(t), u) > 1e-8:
            continue
        ga_t = t @ ga @ dagger(t)
        frame_a = t @ vec_a
        phi_a = np.real(np.diagonal(t @ pa.diagonal_generator() @ dagger(t)))
        dphi = np.asarray(pb.phi) - phi_a
        for s in scales:
            gen_res = frobenius_distance(gb, s * ga_t)
            diag_shift, shift_res, ok_shift = _snap_third_turns(dphi)
            steps = np.round(diag_shift / THIRD_TURN).astype(int)
            if len(set(np.mod(steps, 3))) != 1:
                continue  # not a centre element
            if s == 1.0:
                shifts = np.zeros(3)
                eig_res = 0.0 if np.all(np.mod(steps, 3) == 0) else np.inf
                fixed = None
            else:
                shifts, eig_res, ok = _snap_third_turns((1 - s) * val_a)
                if not ok or np.any(np.mod(np.round(shifts / THIRD_TURN) - steps[0], 3) != 0):
                    continue
                fixed = tuple(float(x) for x in shifts / (1 - s))
            if not ok_shift:
                continue
            # match eigenvector columns of a (after T) to those of b
            overlap = np.abs(dagger(frame_a) @ vec_b) ** 2
            col = min(itertools.permutations(range(3)),
                      key=lambda q: sum(abs(val_b[q[i]] - s * val_a[i]) + 1 - overlap[i, q[i]]
                                        for i in range(3)))
            residual = max(gen_res, shift_res, eig_res)
            if best is None or residual < best.residual - 1e-12:
                best = RelationReport(
                    conjugator=tuple(perm), permutation=tuple(col), scale=s,
                    shifts=tuple(float(x) for x in shifts),
                    diagonal_shift=tuple(float(x) for x in diag_shift),
                    eigenvalues_a=tuple(float(x) for x in val_a),
                    eigenvalues_b=tuple(float(x) for x in val_b),
                    fixed_point_eigenvalues=fixed, residual=float(residual))
    if best is None or best.residual > tol:
        raise NoRelationFound("no permutation/scale/centre-shift relation fits within tolerance")
    return best
