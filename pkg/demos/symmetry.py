"""
Symmetries of a gate and how they relate decompositions
========================================================

Any ``T`` commuting with ``U`` maps one factorization of ``U`` onto another
by conjugation. For a non-degenerate spectrum these ``T`` form a 3-torus.
"""
import numpy as np

from su3forge import commutant, frobenius_distance, swap12, walsh_hadamard
from su3forge.dod import table1_params
from su3forge.symmetry import conjugate_decomposition, relate_solutions, wh_symmetry

W, S = walsh_hadamard(), swap12()
fam = commutant(W)
print("eigenvalues of W:", np.round(fam.eigenvalues, 6))

# %% Random members of the family commute with W
rng = np.random.default_rng(1)
for theta in rng.uniform(-np.pi, np.pi, (3, 3)):
    t = fam.sample(theta)
    print(np.round(theta, 3), f"|[T, W]| = {frobenius_distance(t @ W, W @ t):.1e}")

# %% The closed form, and the level swap as a special member
print("closed form at (pi, 0, 0) equals S:", np.allclose(wh_symmetry((np.pi, 0, 0)), S))
t0 = wh_symmetry((0, 0, 0), as_printed=True)
print(f"closed form as printed at theta = 0 is off from I by {frobenius_distance(t0, np.eye(3)):.4f}")

# %% Conjugating a tabulated set by S keeps the product equal to W
sets = table1_params()
res = conjugate_decomposition(S, sets[2])
print("still diagonal x off-diagonal x diagonal:", res.still_dod_form)

# %% Recover the map between set 5 and set 2
rel = relate_solutions(sets[4], sets[1], W)
print(f"scale {rel.scale}, fixed-point eigenvalues {np.round(rel.fixed_point_eigenvalues, 4)}")
print("in units of pi/9:", np.round(np.asarray(rel.fixed_point_eigenvalues) / (np.pi / 9), 4))
