"""Bundled gate library and constructions on top of it.

Contains every sequence the package ships: the analytic single-qubit gates
for the four-qubit code, the 34-gate two-qubit core and its four local
correction layers, and the two three-qubit-code CNOT realizations (the
26-gate symmetry-constrained one and the 31-gate unrestricted one).

Times are stored verbatim as decimal literals in applied order; "polished"
variants carry simplex-refined times committed as data (see
``tools/make_polished.py``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import optimize
from .encoding import Code
from .metrics import phase_aligned_distance, leakage_projected
from .pulse import ExchangeSequence, PulseGate
from ._polished import POLISHED_TIMES

# ---------------------------------------------------------------------------
# analytic single-qubit constructions (four-qubit code, block qubits 1..4)

PI8_TIME = math.pi / 8

HADAMARD_T1 = 0.5 * math.asin(math.sqrt(2.0 / 3.0))
HADAMARD_T2 = math.acos(math.sqrt(1.0 / 3.0))

# The (1,2)-exchange projects to diag(-1, 1) on the code space and the
# (2,3)-exchange to [[1/2, r3/2], [r3/2, -1/2]].  The Hadamard needs the
# middle pulse run backwards: the all-positive-time product is far from H,
# while (t1, -t2, t1) lands on it exactly (up to global phase).
_HADAMARD_GATES = (((1, 2), HADAMARD_T1),
                   ((2, 3), -HADAMARD_T2),
                   ((1, 2), HADAMARD_T1))

# ---------------------------------------------------------------------------
# 34-gate sequence locally equivalent to CNOT on two four-qubit blocks

_CNOT34_4Q = (
    ((4, 5), 1.90680), ((3, 4), 1.59536), ((5, 6), 1.26290), ((2, 3), 1.59745),
    ((6, 7), 2.06920), ((1, 2), 0.05331), ((7, 8), 0.76951), ((2, 3), 1.59747),
    ((6, 7), 0.71337), ((3, 4), 1.59958), ((5, 6), 1.26287), ((4, 5), 1.90667),
    ((3, 4), 0.59810), ((5, 6), 1.71467), ((2, 3), 1.06264), ((6, 7), 0.91559),
    ((1, 2), 2.30240), ((7, 8), 0.95629), ((2, 3), 1.06260), ((6, 7), 0.68131),
    ((3, 4), 0.59800), ((5, 6), 1.19942), ((4, 5), 1.04719), ((3, 4), 3.14138),
    ((5, 6), 0.95529), ((2, 3), 1.63957), ((6, 7), 1.91303), ((1, 2), 2.47920),
    ((7, 8), 2.18627), ((2, 3), 1.05736), ((6, 7), 0.94814), ((3, 4), 3.14170),
    ((5, 6), 4.09690), ((4, 5), 2.09434),
)

# four-gate local-unitary layers (single block; U layers close the circuit,
# V layers open it)
_LOCAL_PAIRS = ((1, 2), (2, 3), (1, 2), (2, 3))
_LOCAL_TIMES = {
    "local_U1_4q": (2.218823, 4.386508, 3.442139, 1.808165),
    "local_U2_4q": (1.391831, 1.977325, 2.974488, 2.105277),
    "local_V1_4q": (4.865658, 3.141319, 1.493938, 3.141314),
    "local_V2_4q": (0.933012, 2.025429, 1.315318, 0.042865),
}

# ---------------------------------------------------------------------------
# three-qubit-code CNOTs on two blocks (qubits 1..3 and 4..6)

# 26-gate symmetry-constrained variant: a 3-gate opening layer on block 2,
# the 19-gate core, then a 4-gate closing layer.
_CNOT26_3Q = (
    ((5, 6), 0.863060), ((4, 5), 0.303496), ((5, 6), 0.863060),
    # core, locally equivalent to CNOT
    ((3, 4), 1.290877), ((2, 3), 0.650655), ((4, 5), 0.871873),
    ((1, 2), -1.207108), ((5, 6), -1.034121), ((2, 3), 0.650655),
    ((4, 5), 0.871873), ((3, 4), 2.012205), ((2, 3), 1.302881),
    ((1, 2), -0.502098), ((2, 3), 1.302881), ((3, 4), 0.463869),
    ((2, 3), 2.554511), ((4, 5), 0.871873), ((1, 2), 1.249644),
    ((5, 6), -1.034121), ((2, 3), 2.554511), ((4, 5), 0.871873),
    ((3, 4), 1.290877),
    # closing layer
    ((1, 2), 0.612497), ((5, 6), 2.826113), ((4, 5), 2.838096),
    ((5, 6), 2.278532),
)

# Paired times of the 26-gate core satisfying tan(t)*tan(t_bar) = -2.
CORRELATED_TIME_PAIRS = {
    5: (0.650655, -1.207108),
    6: (0.871873, -1.034121),
    8: (1.302881, -0.502098),
    10: (2.554511, 1.249644),
}

# 31-gate unrestricted variant: 6-gate opening layer (block 1 then block 2),
# the 19-gate core, 6-gate closing layer.  Within each block-2 triple the
# listed times run opposite to the applied order; they are stored applied-
# order here, which is what reproduces the exact CNOT.
_CNOT31_3Q = (
    ((2, 3), 3.141592), ((1, 2), 0.989737), ((2, 3), 3.141593),
    ((5, 6), 0.863060), ((4, 5), 0.303496), ((5, 6), 2.477807),
    # core, locally equivalent to CNOT
    ((3, 4), 4.432470), ((2, 3), 3.792238), ((4, 5), 2.107472),
    ((1, 2), 5.076069), ((5, 6), 0.871873), ((2, 3), 3.792237),
    ((4, 5), 5.249065), ((3, 4), 5.153789), ((2, 3), 1.302870),
    ((1, 2), 5.781068), ((2, 3), 4.444461), ((3, 4), 0.463873),
    ((2, 3), 1.249608), ((4, 5), 5.249065), ((1, 2), 2.554454),
    ((5, 6), 4.013466), ((2, 3), 4.391200), ((4, 5), 2.107472),
    ((3, 4), 1.290877),
    # closing layer
    ((2, 3), 3.141592), ((1, 2), 0.927636), ((2, 3), 3.141592),
    ((5, 6), 0.466283), ((4, 5), 0.303496), ((5, 6), 0.863060),
)

# Slice of the 19-gate core inside the 31-gate sequence (same pulse layout
# as the 26-gate core).
CORE_SLICE_3Q = slice(6, 25)


@dataclass(frozen=True)
class TargetGate:
    """A named target unitary (2x2 encoded-local or 4x4 encoded two-qubit)."""

    name: str
    matrix: np.ndarray


class BudgetExhausted(RuntimeError):
    """Local synthesis ran out of starts; carries the best candidate found."""

    def __init__(self, best_cost: float, best_sequence: ExchangeSequence):
        super().__init__(f"no solution within the start budget; "
                         f"best cost {best_cost:.3e}")
        self.best_cost = best_cost
        self.best_sequence = best_sequence


def _seq(code: Code, n: int, data) -> ExchangeSequence:
    gates = tuple(PulseGate(q1, q2, t) for (q1, q2), t in data)
    return ExchangeSequence(n_physical=n, code=code, gates=gates)


def _offset(data, shift: int):
    return tuple(((q1 + shift, q2 + shift), t) for (q1, q2), t in data)


def _local_layer(name: str) -> tuple:
    return tuple(zip(_LOCAL_PAIRS, _LOCAL_TIMES[name]))


def _exact_cnot_4q_data() -> tuple:
    block = Code.FOUR_QUBIT.block_size
    return (_local_layer("local_V1_4q") + _offset(_local_layer("local_V2_4q"), block)
            + _CNOT34_4Q
            + _local_layer("local_U1_4q") + _offset(_local_layer("local_U2_4q"), block))


_BUILTIN_DATA = {
    "pi8_4q": (Code.FOUR_QUBIT, 4, (((1, 2), PI8_TIME),)),
    "hadamard_4q": (Code.FOUR_QUBIT, 4, _HADAMARD_GATES),
    "cnot34_4q": (Code.FOUR_QUBIT, 8, _CNOT34_4Q),
    "local_U1_4q": (Code.FOUR_QUBIT, 4, _local_layer("local_U1_4q")),
    "local_U2_4q": (Code.FOUR_QUBIT, 4, _local_layer("local_U2_4q")),
    "local_V1_4q": (Code.FOUR_QUBIT, 4, _local_layer("local_V1_4q")),
    "local_V2_4q": (Code.FOUR_QUBIT, 4, _local_layer("local_V2_4q")),
    "cnot_exact_4q": (Code.FOUR_QUBIT, 8, _exact_cnot_4q_data()),
    "cnot26_3q": (Code.THREE_QUBIT, 6, _CNOT26_3Q),
    "cnot31_3q": (Code.THREE_QUBIT, 6, _CNOT31_3Q),
}

BUILTIN_NAMES = tuple(_BUILTIN_DATA)


def builtin(name: str, polished: bool = False) -> ExchangeSequence:
    """One of the bundled sequences, by name.

    With ``polished=True`` the simplex-refined times are substituted for
    the verbatim ones (available for the numerically found sequences only).
    """
    try:
        code, n, data = _BUILTIN_DATA[name]
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; "
                         f"known: {', '.join(BUILTIN_NAMES)}") from None
    seq = _seq(code, n, data)
    if polished:
        try:
            seq = seq.with_times(POLISHED_TIMES[name])
        except KeyError:
            raise ValueError(f"no polished variant for {name!r}; "
                             f"available: {', '.join(sorted(POLISHED_TIMES))}") from None
    return seq


def analytic_single_qubit(which: str) -> ExchangeSequence:
    """The exact single-qubit constructions with full-precision times."""
    if which == "pi8":
        return builtin("pi8_4q")
    if which == "hadamard":
        return builtin("hadamard_4q")
    raise ValueError(f"unknown single-qubit gate {which!r}; "
                     "known: pi8, hadamard")


def target(name: str) -> TargetGate:
    """Standard target matrices, 2x2 for local gates and 4x4 for CNOT."""
    if name == "cnot":
        m = np.array([[1, 0, 0, 0], [0, 1, 0, 0],
                      [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    elif name == "hadamard":
        m = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    elif name == "pi8":
        m = np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(complex)
    elif name == "identity":
        m = np.eye(2, dtype=complex)
    else:
        raise ValueError(f"unknown target {name!r}; "
                         "known: cnot, hadamard, pi8, identity")
    m.setflags(write=False)
    return TargetGate(name=name, matrix=m)


def assemble_exact_cnot(code: Code, variant: str = "31") -> ExchangeSequence:
    """The full exact-CNOT sequence for a code.

    For the four-qubit code this is the 50-gate concatenation
    [V layer, 34-gate core, U layer]; for the three-qubit code the 31-gate
    (default) or 26-gate bundled sequence, selected by ``variant``.
    """
    if code is Code.FOUR_QUBIT:
        return builtin("cnot_exact_4q")
    if code is Code.THREE_QUBIT:
        if variant not in ("31", "26"):
            raise ValueError(f"variant must be '31' or '26', got {variant!r}")
        return builtin("cnot31_3q" if variant == "31" else "cnot26_3q")
    raise ValueError(f"unsupported code {code!r}")


def cnot_layout(code: Code) -> optimize.Layout:
    """The fixed pulse layout the two-qubit searches optimize over.

    34 slots on two four-qubit blocks, or the 19-slot core shared by both
    three-qubit sequences.
    """
    if code is Code.FOUR_QUBIT:
        pairs = tuple(p for p, _ in _CNOT34_4Q)
        return optimize.Layout(pairs=pairs, n_physical=8, code=code)
    pairs = tuple(p for p, _ in _CNOT31_3Q[CORE_SLICE_3Q])
    return optimize.Layout(pairs=pairs, n_physical=6, code=code)


def local_layout(code: Code) -> optimize.Layout:
    """The 4-slot alternating layout used for encoded local unitaries."""
    return optimize.Layout(pairs=_LOCAL_PAIRS, n_physical=code.block_size,
                           code=code)


def synthesize_local(targ: TargetGate, code: Code, seed: int,
                     budget: int = 10_000, cost_tol: float = 1e-10,
                     sign: int = +1) -> ExchangeSequence:
    """Find a 4-exchange realization of an encoded local unitary.

    Runs simplex descent from random starts in [0, 2*pi]^4 on the
    alternating (1,2)/(2,3) layout, minimizing the phase-aligned distance
    to the target plus the leakage.  Returns the first solution with cost
    <= cost_tol; raises BudgetExhausted (best candidate attached) if the
    start budget runs out first.
    """
    if targ.matrix.shape != (2, 2):
        raise ValueError("local synthesis needs a 2x2 target")
    layout = local_layout(code)
    cost = optimize.make_distance_objective(layout, targ.matrix, sign=sign)
    nm_cfg = optimize.NMConfig(initial_step=0.4, tolerance=1e-13,
                               max_iterations=2_000)
    rng = np.random.default_rng(seed)
    best_cost = math.inf
    best_times = None
    for _ in range(budget):
        x0 = rng.uniform(0.0, 2.0 * math.pi, size=layout.slots)
        result = optimize.nelder_mead(cost, x0, nm_cfg)
        if result.fun < best_cost:
            best_cost = result.fun
            best_times = result.x
        if best_cost <= cost_tol:
            return layout.sequence(best_times)
    raise BudgetExhausted(best_cost, layout.sequence(best_times))
