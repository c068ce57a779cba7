"""The fixed qutrit gates used throughout: Walsh-Hadamard, the 1<->2 swap,
and the Hamiltonian that generates Walsh-Hadamard in time pi/2."""
import numpy as np

from .mat3 import frobenius_distance
from .reporting import DiscrepancyReport

_R3 = np.sqrt(3.0)


def walsh_hadamard() -> np.ndarray:
    w = np.exp(2j * np.pi / 3)
    return np.array([[1, 1, 1], [1, w, w.conjugate()], [1, w.conjugate(), w]]) / _R3


def swap12() -> np.ndarray:
    """Permutation fixing |0> and exchanging |1> and |2>."""
    return np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=np.complex128)


def wh_hamiltonian() -> np.ndarray:
    """H_W with ``exp(-1j * H_W * pi/2) == walsh_hadamard()``."""
    a, b = 1 / _R3, 1 / (2 * _R3)
    return np.array([
        [-1 + a, a, a],
        [a, -1 - b, -b],
        [a, -b, -1 - b],
    ], dtype=np.complex128)


GATES = {
    "wh": walsh_hadamard,
    "swap12": swap12,
    "identity": lambda: np.eye(3, dtype=np.complex128),
}


def gate(name: str) -> np.ndarray:
    try:
        return GATES[name]()
    except KeyError:
        raise ValueError(f"unknown gate {name!r}; expected one of {sorted(GATES)}") from None


def verify_wh_relations(w=None, s=None, tol: float = 1e-12) -> DiscrepancyReport:
    """Check SWS = W, W^T = W, W^2 = S and det W = -i."""
    w = walsh_hadamard() if w is None else np.asarray(w)
    s = swap12() if s is None else np.asarray(s)
    report = DiscrepancyReport("Walsh-Hadamard relations")
    checks = {
        "SWS=W": frobenius_distance(s @ w @ s, w),
        "W^T=W": frobenius_distance(w.T, w),
        "W^2=S": frobenius_distance(w @ w, s),
        "det W=-i": abs(np.linalg.det(w) + 1j),
    }
    for name, err in checks.items():
        report.add(name, err <= tol, 0.0, float(err))
    return report
