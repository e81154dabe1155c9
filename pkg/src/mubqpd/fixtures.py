"""Explicit operator tables for spin-1/2, spin-1 and spin-3/2.

These are stored verbatim and used both as reference data for the
generated constructions and as the source of the n = 4 bases.
"""

import numpy as np

_W = np.exp(2j * np.pi / 3)
_I = 1j
_R2 = np.sqrt(2.0)
_R5 = np.sqrt(5.0)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# spin-1, commuting pairs (1,2) (3,4) (5,6) (7,8)
ALPHA = (
    np.sqrt(1.5) * np.diag([1, 0, -1]).astype(complex),
    np.diag([1, -2, 1]).astype(complex) / _R2,
    np.array([[0, -_I * _W, _I * _W**2],
              [_I * _W**2, 0, -_I * _W],
              [-_I * _W, _I * _W**2, 0]]) / _R2,
    np.array([[0, -_W, -_W**2],
              [-_W**2, 0, -_W],
              [-_W, -_W**2, 0]]) / _R2,
    np.array([[0, -_I, _I * _W**2],
              [_I, 0, -_I * _W**2],
              [-_I * _W, _I * _W, 0]]) / _R2,
    np.array([[0, -1, -_W**2],
              [-1, 0, -_W**2],
              [-_W, -_W, 0]]) / _R2,
    np.array([[0, -_I * _W**2, _I * _W**2],
              [_I * _W, 0, -_I],
              [-_I * _W, _I, 0]]) / _R2,
    np.array([[0, -_W**2, -_W**2],
              [-_W, 0, -1],
              [-_W, -1, 0]]) / _R2,
)

# spin-1 unitaries diagonalising the second, third and fourth commuting pair
U_SPIN1 = (
    np.array([[1, 1, 1], [1, _W, _W**2], [1, _W**2, _W]]) / np.sqrt(3),
    np.array([[1, _W**2, 1], [1, 1, _W**2], [1, _W, _W]]) / np.sqrt(3),
    np.array([[1, _W, 1], [1, _W**2, _W**2], [1, 1, _W]]) / np.sqrt(3),
)

# spin-3/2, commuting triples (1,2,3) ... (13,14,15)
BETA = (
    np.diag([3, 1, -1, -3]).astype(complex) / _R5,
    np.diag([1, -1, -1, 1]).astype(complex),
    np.diag([1, -3, 3, -1]).astype(complex) / _R5,
    np.array([[0, 1, 2, 0], [1, 0, 0, 2], [2, 0, 0, 1], [0, 2, 1, 0]], dtype=complex) / _R5,
    np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=complex),
    np.array([[0, 2, -1, 0], [2, 0, 0, -1], [-1, 0, 0, 2], [0, -1, 2, 0]], dtype=complex) / _R5,
    np.array([[0, -1j, -2j, 0], [1j, 0, 0, -2j], [2j, 0, 0, -1j], [0, 2j, 1j, 0]]) / _R5,
    np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex),
    np.array([[0, -2j, 1j, 0], [2j, 0, 0, 1j], [-1j, 0, 0, -2j], [0, -1j, 2j, 0]]) / _R5,
    np.array([[0, -1j, 2, 0], [1j, 0, 0, -2], [2, 0, 0, 1j], [0, -2, -1j, 0]]) / _R5,
    np.array([[0, 0, 0, 1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [-1j, 0, 0, 0]]),
    np.array([[0, -2j, -1, 0], [2j, 0, 0, 1], [-1, 0, 0, 2j], [0, 1, -2j, 0]]) / _R5,
    np.array([[0, 1, -2j, 0], [1, 0, 0, 2j], [2j, 0, 0, -1], [0, -2j, -1, 0]]) / _R5,
    np.array([[0, 0, 0, 1j], [0, 0, -1j, 0], [0, 1j, 0, 0], [-1j, 0, 0, 0]]),
    np.array([[0, 2, 1j, 0], [2, 0, 0, -1j], [-1j, 0, 0, -2], [0, 1j, -2, 0]]) / _R5,
)

# Joint eigenbases of BETA sets 2..5.  Column c carries the eigenvalue
# triple found on the diagonal position c of the first set; first row real.
MUB4 = (
    np.array([[1, 1, 1, 1],
              [1, -1, 1, -1],
              [1, 1, -1, -1],
              [1, -1, -1, 1]], dtype=complex) / 2,
    np.array([[1, 1, 1, 1],
              [1j, -1j, 1j, -1j],
              [1j, 1j, -1j, -1j],
              [-1, 1, 1, -1]]) / 2,
    np.array([[1, 1, 1, 1],
              [1j, -1j, 1j, -1j],
              [1, 1, -1, -1],
              [-1j, 1j, 1j, -1j]]) / 2,
    np.array([[1, 1, 1, 1],
              [1, -1, 1, -1],
              [1j, 1j, -1j, -1j],
              [-1j, 1j, 1j, -1j]]) / 2,
)

for _m in (*PAULI, *ALPHA, *U_SPIN1, *BETA, *MUB4):
    _m.setflags(write=False)


def operator_sets(n: int) -> list[list[np.ndarray]]:
    """The stored operators for dimension ``n`` grouped into commuting sets."""
    if n == 2:
        return [[p] for p in PAULI]
    if n == 3:
        return [list(ALPHA[i:i + 2]) for i in range(0, 8, 2)]
    if n == 4:
        return [list(BETA[i:i + 3]) for i in range(0, 15, 3)]
    raise KeyError(n)
