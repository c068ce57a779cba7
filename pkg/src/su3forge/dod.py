"""Diagonal / off-diagonal decomposition ``U = exp(-i G_d) exp(-i G_o)``.

``G_d = diag(phi0, phi1, phi2)`` and ``G_o`` is Hermitian with zero diagonal
and upper-triangle entries ``m01, m02, m12``.

The solver reduces the nine-parameter problem to three unknowns. For fixed
phases the only candidate off-diagonal generators are the matrix logarithms
of ``exp(+i G_d) U``, one per branch vector, so it suffices to find phases
where one of these logarithms has a vanishing diagonal. Those roots are
found by damped Newton iteration from a grid of starting phases, once per
branch vector.
"""
import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import NoSolutionFound, NotUnitary
from .mat3 import (
    PRINCIPAL,
    as_cmat3,
    batched_log_spectrum,
    dagger,
    expm_hermitian_generator,
    frobenius_distance,
    is_unitary,
    logm_unitary,
)

TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class DodParams:
    phi: Tuple[float, float, float]
    m01: complex = 0j
    m02: complex = 0j
    m12: complex = 0j

    @classmethod
    def zero(cls) -> "DodParams":
        return cls((0.0, 0.0, 0.0))

    @classmethod
    def from_generators(cls, g_d, g_o) -> "DodParams":
        g_d, g_o = np.asarray(g_d), np.asarray(g_o)
        return cls(tuple(float(x) for x in np.real(np.diagonal(g_d))),
                   complex(g_o[0, 1]), complex(g_o[0, 2]), complex(g_o[1, 2]))

    def diagonal_generator(self) -> np.ndarray:
        return np.diag(np.asarray(self.phi, dtype=np.complex128))

    def off_diagonal_generator(self) -> np.ndarray:
        g = np.zeros((3, 3), dtype=np.complex128)
        g[0, 1], g[0, 2], g[1, 2] = self.m01, self.m02, self.m12
        return g + dagger(g)

    def canonical(self) -> "DodParams":
        """Same gate with every phase reduced to [0, 2*pi)."""
        phi = tuple(float(x) for x in np.mod(self.phi, TWO_PI))
        return DodParams(phi, self.m01, self.m02, self.m12)

    def as_vector(self) -> np.ndarray:
        m = [self.m01, self.m02, self.m12]
        return np.array(list(self.phi) + [z.real for z in m] + [z.imag for z in m])

    def to_dict(self):
        pair = lambda z: [z.real, z.imag]  # noqa: E731
        return {"phi": list(self.phi), "m01": pair(self.m01),
                "m02": pair(self.m02), "m12": pair(self.m12)}

    @classmethod
    def from_dict(cls, d) -> "DodParams":
        z = lambda p: complex(p[0], p[1])  # noqa: E731
        return cls(tuple(float(x) for x in d["phi"]), z(d["m01"]), z(d["m02"]), z(d["m12"]))


def params_distance(a: DodParams, b: DodParams) -> float:
    """Euclidean distance with phases compared on the circle."""
    va, vb = a.as_vector(), b.as_vector()
    dphi = np.angle(np.exp(1j * (va[:3] - vb[:3])))
    return float(np.sqrt(np.sum(dphi ** 2) + np.sum((va[3:] - vb[3:]) ** 2)))


def compose_dod(p: DodParams) -> np.ndarray:
    """``exp(-i G_d) @ exp(-i G_o)``."""
    d = np.exp(-1j * np.asarray(p.phi, dtype=float))
    return d[:, None] * expm_hermitian_generator(p.off_diagonal_generator())


def phase_residual(phi: Sequence[float], u, branch: Sequence[int] = PRINCIPAL) -> np.ndarray:
    """Diagonal of the generator ``logm_unitary(exp(+i G_d(phi)) @ u, branch)``.

    This is minus the imaginary part of the natural-log diagonal; it vanishes
    exactly when that logarithm is a valid off-diagonal generator.
    """
    u = as_cmat3(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("phase_residual needs a unitary target")
    m = np.exp(1j * np.asarray(phi, dtype=float))[:, None] * u
    return np.real(np.diagonal(logm_unitary(m, branch))).copy()


def phase_sum_check(p: DodParams, u) -> float:
    """``phi0 + phi1 + phi2 + arg det u`` reduced to (-pi, pi]; zero for exact params."""
    x = float(np.sum(p.phi)) + float(np.angle(np.linalg.det(np.asarray(u))))
    r = float(np.angle(np.exp(1j * x)))
    return np.pi if r <= -np.pi else r


@dataclass
class SolveConfig:
    starts: int = 8
    branch_range: int = 1
    tol: float = 1e-9
    dedup_tol: float = 1e-6
    seed: Optional[int] = None
    max_iter: int = 60
    max_halvings: int = 20
    threads: Optional[int] = None

    def __post_init__(self):
        if self.starts < 2:
            raise ValueError("starts must be >= 2")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.branch_range < 0:
            raise ValueError("branch_range must be >= 0")


@dataclass
class SolutionSet:
    solutions: List[DodParams]
    residuals: List[float]
    target: np.ndarray
    branches: List[Tuple[int, int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def to_dict(self):
        return {
            "target": [[[z.real, z.imag] for z in row] for row in self.target],
            "solutions": [
                dict(p.to_dict(), residual=r, branch=list(b),
                     offdiag_cost=offdiag_cost(p))
                for p, r, b in zip(self.solutions, self.residuals, self.branches)
            ],
        }


def offdiag_cost(p: DodParams) -> float:
    g = p.off_diagonal_generator()
    return float(np.trace(g @ g).real / 2)


def branch_vectors(branch_range: int) -> List[Tuple[int, int, int]]:
    """Branch vectors with |k_j| <= range whose trace shift can vanish.

    Principal phases sum into (-3pi, 3pi], so a zero generator trace needs
    ``|sum(k)| <= 1``.
    """
    r = range(-branch_range, branch_range + 1)
    return [k for k in itertools.product(r, repeat=3) if abs(sum(k)) <= 1]


def _residual_and_jacobian(phi: np.ndarray, u: np.ndarray, branch):
    """Batched residual F(phi) = diag(g) and its exact Jacobian dF/dphi."""
    m = np.exp(1j * phi)[:, :, None] * u[None]
    mu, v = batched_log_spectrum(m, branch)
    vh = dagger(v)
    g = (v * mu[:, None, :]) @ vh
    f = np.real(np.diagonal(g, axis1=-2, axis2=-1)).copy()

    # Frechet derivative of g = h^{-1}(M) with h(x) = exp(-ix):
    # V^H dg V = (V^H dM V) / D, D the divided differences of h on mu.
    h = np.exp(-1j * mu)
    dmu = mu[:, :, None] - mu[:, None, :]
    dh = h[:, :, None] - h[:, None, :]
    close = np.abs(dmu) < 1e-9
    div = np.where(close, -1j * h[:, :, None], dh / np.where(close, 1.0, dmu))
    # branch points (mu_a - mu_b a nonzero multiple of 2pi) are not differentiable
    div = np.where(np.abs(div) < 1e-12, 1e-12, div)

    # dM/dphi_j = i E_jj M  =>  V^H dM V = i conj(V[j,:])^T V[j,:] diag(h)
    x = 1j * np.conj(v)[:, :, :, None] * v[:, :, None, :] * h[:, None, None, :]
    y = x / div[:, None, :, :]
    # diag(V Y V^H)_l = sum_ab V[l,a] Y[a,b] conj(V[l,b])
    jac = np.real(np.einsum("nla,njab,nlb->nlj", v, y, np.conj(v)))
    return f, jac, g


def _newton(phi0: np.ndarray, u: np.ndarray, branch, cfg: SolveConfig):
    phi = phi0.copy()
    f, jac, g = _residual_and_jacobian(phi, u, branch)
    norm = np.linalg.norm(f, axis=1)
    alive = np.ones(len(phi), dtype=bool)
    for _ in range(cfg.max_iter):
        active = np.nonzero(alive & (norm > 1e-14))[0]
        if active.size == 0:
            break
        try:
            step = np.linalg.solve(jac[active], -f[active][:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            step = np.array([np.linalg.lstsq(a, -b, rcond=None)[0]
                             for a, b in zip(jac[active], f[active])])
        t = np.ones(active.size)
        pending = np.ones(active.size, dtype=bool)
        for _ in range(cfg.max_halvings):
            sel = np.nonzero(pending)[0]
            if sel.size == 0:
                break
            idx = active[sel]
            trial = phi[idx] + t[sel, None] * step[sel]
            f2, j2, g2 = _residual_and_jacobian(trial, u, branch)
            n2 = np.linalg.norm(f2, axis=1)
            ok = np.isfinite(n2) & (n2 < norm[idx])
            take = idx[ok]
            phi[take], f[take], jac[take], g[take], norm[take] = (
                trial[ok], f2[ok], j2[ok], g2[ok], n2[ok])
            pending[sel[ok]] = False
            t[sel[~ok]] /= 2
        # no decrease after all halvings: converged to precision or stalled
        alive[active[pending]] = False
    return phi, norm, g


def _start_grid(cfg: SolveConfig) -> np.ndarray:
    grid = np.arange(cfg.starts) * TWO_PI / cfg.starts
    starts = np.array(list(itertools.product(grid, repeat=3)))
    if cfg.seed is not None:
        offset = np.random.default_rng(cfg.seed).uniform(0, TWO_PI / cfg.starts, size=3)
        starts = starts + offset
    return starts


def _roots_for_branch(u, branch, starts, cfg):
    phi, norm, g = _newton(starts, u, branch, cfg)
    found = []
    for n in np.nonzero(norm < 1e-8)[0]:
        g_o = g[n] - np.diag(np.diagonal(g[n]))
        g_o = (g_o + dagger(g_o)) / 2
        p = DodParams.from_generators(np.diag(phi[n]), g_o).canonical()
        r = frobenius_distance(compose_dod(p), u)
        if r <= cfg.tol:
            found.append((p, r, tuple(branch)))
    return found


def _thread_count(cfg: SolveConfig) -> int:
    if cfg.threads is not None:
        return max(1, int(cfg.threads))
    return max(1, int(os.environ.get("SU3_FORGE_THREADS", "1")))


def solve_dod(u, cfg: Optional[SolveConfig] = None) -> SolutionSet:
    """All distinct diagonal/off-diagonal decompositions found for ``u``.

    Solutions are canonicalized (phases in [0, 2*pi)), deduplicated with
    ``cfg.dedup_tol`` and sorted by off-diagonal cost ``Tr(G_o^2)/2``.
    """
    cfg = cfg or SolveConfig()
    u = as_cmat3(u)
    if not is_unitary(u, 1e-10):
        raise NotUnitary("solve_dod needs a unitary target")
    starts = _start_grid(cfg)
    branches = branch_vectors(cfg.branch_range)
    n_threads = _thread_count(cfg)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            per_branch = list(pool.map(lambda k: _roots_for_branch(u, k, starts, cfg), branches))
    else:
        per_branch = [_roots_for_branch(u, k, starts, cfg) for k in branches]
    candidates = [c for chunk in per_branch for c in chunk]
    if not candidates:
        raise NoSolutionFound("no decomposition found within the configured starts/branches")

    # order-independent: best residual first within a canonical ordering
    candidates.sort(key=lambda c: (round(offdiag_cost(c[0]), 6),
                                   tuple(np.round(c[0].as_vector(), 6)), c[1]))
    kept: List[Tuple[DodParams, float, tuple]] = []
    for cand in candidates:
        if all(params_distance(cand[0], k[0]) >= cfg.dedup_tol for k in kept):
            kept.append(cand)
    kept.sort(key=lambda c: (offdiag_cost(c[0]), tuple(c[0].as_vector())))
    return SolutionSet([k[0] for k in kept], [k[1] for k in kept], u, [k[2] for k in kept])


@lru_cache(maxsize=None)
def _table1_data():
    text = resources.files("su3forge.data").joinpath("table1.json").read_text()
    return json.loads(text)


def table1_params() -> List[DodParams]:
    """The five printed Walsh-Hadamard parameter sets, in table order."""
    return [DodParams.from_dict(row) for row in _table1_data()["rows"]]


def match_table1(p: DodParams, tol: float = 1e-3) -> Optional[int]:
    """1-based index of the printed set within ``tol`` of ``p``, if any."""
    for i, q in enumerate(table1_params(), start=1):
        if params_distance(p.canonical(), q.canonical()) <= tol:
            return i
    return None
