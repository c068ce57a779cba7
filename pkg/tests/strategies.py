"""Hypothesis strategies shared by the test modules."""
import numpy as np
from hypothesis import strategies as st

from su3forge.mat3 import haar_random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)
angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False)


@st.composite
def unitaries(draw):
    return haar_random_unitary(draw(seeds))


@st.composite
def hermitians(draw, scale=3.0):
    vals = draw(st.lists(st.floats(-scale, scale, allow_nan=False), min_size=9, max_size=9))
    a = np.array(vals[:3], dtype=complex)
    h = np.diag(a)
    h[0, 1], h[0, 2], h[1, 2] = vals[3] + 1j * vals[4], vals[5] + 1j * vals[6], vals[7] + 1j * vals[8]
    h[1, 0], h[2, 0], h[2, 1] = np.conj(h[0, 1]), np.conj(h[0, 2]), np.conj(h[1, 2])
    return h
