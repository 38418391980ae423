"""The magic-basis transform: psi -> R -> P.

R is the 4x4 matrix T @ psi_tilde @ T^dagger, where psi_tilde reshapes the
amplitudes with row index 2*i1 + i2 and column index 2*i3 + i4.  A local
determinant-one operation on the qubit pairs (12) and (34) acts on R by left
and right multiplication with complex orthogonal matrices, which is what the
whole classification rests on.
"""

import numpy as np

from .errors import InvalidInputError
from .states import PureState4

_S = 1.0 / np.sqrt(2.0)

MAGIC_T = _S * np.array(
    [
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0j, 1.0j, 0.0],
        [0.0, -1.0, 1.0, 0.0],
        [1.0j, 0.0, 0.0, -1.0j],
    ]
)


def to_R(state):
    """The 4x4 magic-basis matrix of a state (linear in the amplitudes)."""
    tilde = state.amplitudes.reshape(4, 4)
    return MAGIC_T @ tilde @ MAGIC_T.conj().T


def from_R(R):
    """Inverse of to_R."""
    R = np.asarray(R, dtype=complex)
    if R.shape != (4, 4):
        raise InvalidInputError("from_R expects a 4x4 matrix")
    tilde = MAGIC_T.conj().T @ R @ MAGIC_T
    return PureState4(tilde.reshape(16))


def to_P(R):
    """The symmetric 8x8 matrix [[0, R], [R^T, 0]]."""
    R = np.asarray(R, dtype=complex)
    P = np.zeros((8, 8), dtype=complex)
    P[:4, 4:] = R
    P[4:, :4] = R.T
    return P
