"""Logical qubits encoded in blocks of 3 or 4 physical spins.

Builds the logical basis states, the projector onto the logical subspace of
one or two encoded blocks, and the mirror relabeling that maps a stacked
two-row layout onto the serial one.

Both codes live in fixed total-spin sectors, so every within-block exchange
preserves the logical subspace exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .qcore import ket, kron


class Code(Enum):
    """Which encoding: 4 or 3 physical qubits per logical qubit."""

    FOUR_QUBIT = "four_qubit"
    THREE_QUBIT = "three_qubit"

    @property
    def block_size(self) -> int:
        return 4 if self is Code.FOUR_QUBIT else 3


@dataclass(frozen=True)
class LogicalProjector:
    """Isometry whose orthonormal columns are the logical basis states.

    For two blocks the column order is |00>, |01>, |10>, |11> (logical).
    """

    code: Code
    n_blocks: int
    matrix: np.ndarray  # shape (2**(block*n_blocks), 2**n_blocks)

    @property
    def n_physical(self) -> int:
        return self.code.block_size * self.n_blocks

    @property
    def n_logical_states(self) -> int:
        return self.matrix.shape[1]


@lru_cache(maxsize=None)
def logical_states(code: Code) -> tuple[np.ndarray, np.ndarray]:
    """Unit-norm logical |0>, |1> of one encoded block.

    The four-qubit zero state is a product of two singlets; the one state
    lives in the triplet-triplet sector.  All amplitudes are real.
    """
    if code is Code.FOUR_QUBIT:
        singlet = (ket("01") - ket("10")) / np.sqrt(2)
        t_zero = (ket("01") + ket("10")) / np.sqrt(2)
        t_minus = ket("00")
        t_plus = ket("11")
        zero = kron(singlet, singlet)
        one = (kron(t_plus, t_minus) - kron(t_zero, t_zero)
               + kron(t_minus, t_plus)) / np.sqrt(3)
    else:
        singlet = (ket("10") - ket("01")) / np.sqrt(2)
        t_zero = (ket("10") + ket("01")) / np.sqrt(2)
        t_plus = ket("11")
        zero = kron(singlet, ket("1"))
        one = (np.sqrt(2.0 / 3.0) * kron(t_plus, ket("0"))
               - np.sqrt(1.0 / 3.0) * kron(t_zero, ket("1")))
    zero.setflags(write=False)
    one.setflags(write=False)
    return zero, one


@lru_cache(maxsize=None)
def projector(code: Code, n_blocks: int) -> LogicalProjector:
    """Projector onto the logical subspace of 1 or 2 encoded blocks."""
    if n_blocks not in (1, 2):
        raise ValueError(f"n_blocks must be 1 or 2, got {n_blocks}")
    zero, one = logical_states(code)
    if n_blocks == 1:
        cols = [zero, one]
    else:
        cols = [kron(a, b) for a in (zero, one) for b in (zero, one)]
    matrix = np.column_stack(cols)
    matrix.setflags(write=False)
    return LogicalProjector(code=code, n_blocks=n_blocks, matrix=matrix)


def project_logical(w: np.ndarray, p: LogicalProjector) -> np.ndarray:
    """M = P† W P, the operator restricted to the logical basis."""
    w = np.asarray(w, dtype=complex)
    dim = p.matrix.shape[0]
    if w.shape != (dim, dim):
        raise ValueError(f"operator shape {w.shape} does not match the "
                         f"{dim}-dimensional projector")
    return p.matrix.conj().T @ w @ p.matrix


def mirror_relabel(seq):
    """Relabel the second four-qubit block as if its array were mirrored.

    In the stacked two-row layout the second block is numbered 4,3,2,1, so
    physical qubits map 5<->8 and 6<->7 while times are unchanged.  Both
    logical states are symmetric under the in-block mirror swap, so the
    relabeled sequence implements the same encoded gate.
    """
    from .pulse import ExchangeSequence, PulseGate

    if seq.code is not Code.FOUR_QUBIT or seq.n_physical != 8:
        raise ValueError("mirror relabeling is defined on two four-qubit blocks")
    mapping = {5: 8, 6: 7, 7: 6, 8: 5}
    gates = []
    for g in seq.gates:
        q1 = mapping.get(g.q1, g.q1)
        q2 = mapping.get(g.q2, g.q2)
        if q1 > q2:  # exchange is symmetric in its qubits
            q1, q2 = q2, q1
        gates.append(PulseGate(q1, q2, g.t))
    return ExchangeSequence(n_physical=8, code=seq.code, gates=tuple(gates))
