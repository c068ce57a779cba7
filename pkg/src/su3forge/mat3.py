"""Complex 3x3 linear algebra: predicates, spectral decompositions, exp/log
with explicit branch control, and Haar sampling.

Matrices are plain ``numpy`` arrays of shape ``(3, 3)`` and dtype
``complex128``. Every function returns fresh arrays; nothing is mutated in
place.

Sign convention used throughout the package: a Hermitian generator ``g``
produces the unitary ``exp(-1j * g)``.
"""
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from .errors import NotHermitian, NotUnitary

BranchVector = Tuple[int, int, int]
PRINCIPAL: BranchVector = (0, 0, 0)

# eigenvalues of the Hermitian part closer than this are treated as one cluster
DEGENERACY_TOL = 1e-8


class EigenSystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def as_cmat3(m) -> np.ndarray:
    """Coerce ``m`` to a finite complex 3x3 array."""
    a = np.array(m, dtype=np.complex128)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def frobenius_distance(a, b) -> float:
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def is_hermitian(m, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return bool(np.linalg.norm(m - dagger(m)) <= tol)


def is_unitary(m, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return bool(np.linalg.norm(dagger(m) @ m - np.eye(3)) <= tol)


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude entry of each column made real positive
    v = vectors.copy()
    for j in range(v.shape[1]):
        i = int(np.argmax(np.abs(v[:, j])))
        v[:, j] *= np.exp(-1j * np.angle(v[i, j]))
    return v


def eig_hermitian(m) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix, ascending real eigenvalues."""
    m = as_cmat3(m)
    if not is_hermitian(m, 1e-10):
        raise NotHermitian("eig_hermitian needs a Hermitian matrix")
    h = (m + dagger(m)) / 2
    values, vectors = np.linalg.eigh(h)
    return EigenSystem(values, _fix_phases(vectors))


def principal_phase(z):
    """Argument of ``z`` mapped into (-pi, pi]."""
    ph = np.angle(z)
    return np.where(ph <= -np.pi, ph + 2 * np.pi, ph)


def _clusters(values: np.ndarray, tol: float):
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _unitary_frame(m: np.ndarray) -> np.ndarray:
    # The Hermitian and skew parts of a normal matrix share eigenvectors.
    # Where the Hermitian part is degenerate, the skew part splits the
    # cluster (eigenvalues e^{+-it} share the same cosine).
    herm = (m + dagger(m)) / 2
    skew = (m - dagger(m)) / 2j
    values, v = np.linalg.eigh(herm)
    for group in _clusters(values, DEGENERACY_TOL):
        if len(group) < 2:
            continue
        sub = v[:, group]
        _, w = np.linalg.eigh(dagger(sub) @ skew @ sub)
        v[:, group] = sub @ w
    return v


def eig_unitary(m) -> EigenSystem:
    """Eigen-decomposition of a unitary matrix.

    Eigenvalues lie on the unit circle and are ordered by ascending
    principal phase in (-pi, pi]. Eigenvector phases are fixed so that the
    largest-magnitude entry of each column is real positive.
    """
    m = as_cmat3(m)
    if not is_unitary(m, 1e-10):
        raise NotUnitary("eig_unitary needs a unitary matrix")
    v = _unitary_frame(m)
    z = np.diagonal(dagger(v) @ m @ v).copy()
    z = z / np.abs(z)
    order = np.argsort(principal_phase(z), kind="stable")
    return EigenSystem(z[order], _fix_phases(v[:, order]))


def expm_hermitian_generator(g) -> np.ndarray:
    """``exp(-1j * g)`` for Hermitian ``g``, computed spectrally."""
    values, vectors = eig_hermitian(g)
    return (vectors * np.exp(-1j * values)) @ dagger(vectors)


def logm_unitary(u, branch: Sequence[int] = PRINCIPAL) -> np.ndarray:
    """Hermitian ``g`` with ``exp(-1j * g) == u``.

    The eigenvalue of ``g`` paired with the j-th eigenvalue of
    :func:`eig_unitary` is ``-phase_j + 2*pi*branch[j]``; the principal branch
    therefore has its spectrum in [-pi, pi).
    """
    u = as_cmat3(u)
    values, vectors = eig_unitary(u)
    mu = -principal_phase(values) + 2 * np.pi * np.asarray(branch, dtype=float)
    g = (vectors * mu) @ dagger(vectors)
    return (g + dagger(g)) / 2


def haar_random_unitary(seed) -> np.ndarray:
    """Haar-distributed 3x3 unitary, deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def special_unitary_part(u) -> Tuple[float, np.ndarray]:
    """Split ``u = exp(1j*chi) * s`` with ``det s == 1`` using ``chi = arg(det u)/3``."""
    chi = float(np.angle(np.linalg.det(u))) / 3
    return chi, np.exp(-1j * chi) * np.asarray(u)


# --- batched helpers used by the DOD solver ---------------------------------


def batched_log_spectrum(m: np.ndarray, branch: Sequence[int]):
    """Generator spectrum and frames for a stack of unitaries ``m`` (N, 3, 3).

    Returns ``(mu, v)`` with ``m[n] == v[n] @ diag(exp(-1j*mu[n])) @ v[n]^H``
    using the same ordering and branch rule as :func:`logm_unitary`.
    Matrices whose Hermitian part is degenerate are redone one at a time.
    """
    herm = (m + dagger(m)) / 2
    _, v = np.linalg.eigh(herm)
    t = dagger(v) @ m @ v
    off = np.abs(t).sum(axis=(-1, -2)) - np.abs(np.diagonal(t, axis1=-2, axis2=-1)).sum(-1)
    for n in np.nonzero(off > 1e-9)[0]:
        v[n] = _unitary_frame(m[n])
        t[n] = dagger(v[n]) @ m[n] @ v[n]
    z = np.diagonal(t, axis1=-2, axis2=-1)
    ph = principal_phase(z)
    order = np.argsort(ph, axis=-1, kind="stable")
    ph = np.take_along_axis(ph, order, -1)
    v = np.take_along_axis(v, order[:, None, :], -1)
    mu = -ph + 2 * np.pi * np.asarray(branch, dtype=float)
    return mu, v
