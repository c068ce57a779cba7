"""
Walsh-Hadamard gate as diagonal x off-diagonal x diagonal
==========================================================

Find every factorization ``W = exp(-i D) exp(-i O) exp(-i D)`` reachable
from a grid of starting phases, then compare with the five tabulated sets.
"""
import numpy as np

from su3forge import SolveConfig, compose_dod, frobenius_distance, solve_dod, walsh_hadamard
from su3forge.dod import match_table1, table1_params

W = walsh_hadamard()
print(np.round(W * np.sqrt(3), 3))

# %% The tabulated sets reproduce W to the precision they are printed at
for i, p in enumerate(table1_params(), start=1):
    print(f"set {i}: phi = {np.round(p.phi, 4)}, error {frobenius_distance(compose_dod(p), W):.1e}")

# %% Solve from scratch: 8 starts per axis, log branches with |k| <= 1
sols = solve_dod(W, SolveConfig(starts=8, branch_range=1))
print(f"{len(sols)} distinct solutions, worst residual {max(sols.residuals):.1e}")
for p, b in zip(sols, sols.branches):
    row = match_table1(p)
    tag = f"matches set {row}" if row else ""
    print(f"branch {b}: phi = {np.round(p.phi, 4)} {tag}")

# %% Every solution obeys the phase-sum law: exp(-i sum phi) = det W = -i
print(max(abs(np.exp(-1j * sum(p.phi)) - np.linalg.det(W)) for p in sols))
