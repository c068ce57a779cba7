"""
Cartan factorization and removing the 0<->2 coupling
====================================================

Split a random gate as diagonal x block rotation x coupling exponential,
then rewrite the last factor so no generator drives the 0<->2 transition.
"""
import numpy as np

from su3forge import cartan_decompose, frobenius_distance, haar_random_unitary, split
from su3forge.cartan import eliminate_two_photon, lambda2_conjugate, printed_h_list_report
from su3forge.gellmann import basis, decompose

u = haar_random_unitary(42)

# %% All three splits reconstruct the input
for name in "ABC":
    f = cartan_decompose(u, split(name))
    print(name, f"round trip {frobenius_distance(f.compose(), u):.1e}",
          f"foreign support {f.foreign_support():.1e}", "euler", np.round(f.euler, 4))

# %% Conjugation by exp(i l2 t) rotates l4 into -l6
t = 0.7
print(np.allclose(lambda2_conjugate(4, t), basis(4) * np.cos(t) - basis(6) * np.sin(t)))

# %% The chain carries no l4 or l5 component
chain = eliminate_two_photon(cartan_decompose(u, split("C")))
for fac in chain.factors:
    c = decompose(fac.generator())
    print(f"{fac.role:>12}: support {fac.support}, |c4|+|c5| = {abs(c[4]) + abs(c[5]):.1e}")
print(f"product error {frobenius_distance(chain.compose(), u):.1e}")

# %% The tabulated Hamiltonian list for W, checked numerically
for e in printed_h_list_report().entries:
    print(e.id, round(float(e.computed), 4))
