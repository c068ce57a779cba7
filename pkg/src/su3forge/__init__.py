"""Decompositions, symmetries and pulse costs of single-qutrit gates."""
from .cartan import (
    CartanFactors,
    CartanSplit,
    GivensChain,
    cartan_decompose,
    compose_factors,
    eliminate_two_photon,
    kak_factor,
    split,
)
from .cost import CostReport, drive_power_proxy, hs_cost, single_pulse_cost, table2_report
from .dod import DodParams, SolutionSet, SolveConfig, compose_dod, solve_dod
from .errors import (
    BranchSelectionFailed,
    DegenerateSpectrum,
    IndexOutOfRange,
    NoRelationFound,
    NoSolutionFound,
    NotHermitian,
    NotUnitary,
    Su3ForgeError,
    UnknownSplit,
    WrongSplit,
)
from .gates import swap12, walsh_hadamard, wh_hamiltonian
from .gellmann import basis, check_cartan_split, decompose, reconstruct, structure_constants
from .mat3 import (
    eig_hermitian,
    eig_unitary,
    expm_hermitian_generator,
    frobenius_distance,
    haar_random_unitary,
    logm_unitary,
)
from .symmetry import commutant, conjugate_decomposition, relate_solutions

__version__ = "0.1.0"
