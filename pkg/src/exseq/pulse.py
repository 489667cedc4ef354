"""Timed exchange-pulse sequences.

A sequence is an ordered list of nearest- or non-nearest-neighbor exchange
pulses on a physical register; times are in units of 2*hbar/J, so a pulse of
time t implements exp(sign * i * t * E) with E the two-qubit exchange
(SWAP) operator.  Since E**2 = I the exponential is evaluated in closed
form, cos(t)*I + i*sign*sin(t)*E, which is exact.

The default sign convention is +1.  Evaluating with the opposite sign
conjugates the result; all bundled-sequence figures of merit are invariant
under that, so the convention only matters for phase-sensitive targets.

The file format (JSON, UTF-8, 1-based qubit indices) is::

    {"version": 1, "code": "four_qubit", "n_physical": 8,
     "gates": [{"q1": 4, "q2": 5, "t": 1.9068}, ...]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernel
from .encoding import Code, LogicalProjector
from .pairtables import exchange_rows

FORMAT_VERSION = 1


class SequenceFormatError(ValueError):
    """Raised by ``parse`` with the location of the first malformed entry."""


@dataclass(frozen=True)
class PulseGate:
    """One timed exchange between physical qubits q1 and q2 (1-based).

    Times may be negative and are physically periodic with period 2*pi up
    to a global phase; they are stored exactly as given.
    """

    q1: int
    q2: int
    t: float

    def __post_init__(self):
        if self.q1 == self.q2:
            raise ValueError(f"gate qubits must be distinct, got ({self.q1}, {self.q2})")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.q1, self.q2)


@dataclass(frozen=True)
class ExchangeSequence:
    """Ordered pulses on a register; the first gate is applied first."""

    n_physical: int
    code: Code
    gates: tuple[PulseGate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for k, g in enumerate(self.gates):
            if not (1 <= g.q1 <= self.n_physical and 1 <= g.q2 <= self.n_physical):
                raise ValueError(f"gate {k}: qubits ({g.q1}, {g.q2}) outside register "
                                 f"of size {self.n_physical}")

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def times(self) -> np.ndarray:
        return np.array([g.t for g in self.gates])

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(g.pair for g in self.gates)

    def with_times(self, times) -> "ExchangeSequence":
        """Same pulse layout with new times."""
        if len(times) != len(self.gates):
            raise ValueError(f"expected {len(self.gates)} times, got {len(times)}")
        gates = tuple(PulseGate(g.q1, g.q2, float(t))
                      for g, t in zip(self.gates, times))
        return ExchangeSequence(self.n_physical, self.code, gates)

    @property
    def serial_time(self) -> float:
        return float(sum(abs(g.t) for g in self.gates))


@dataclass(frozen=True)
class Schedule:
    """Greedy parallel packing of a sequence into cycles.

    Gates within a cycle act on disjoint qubit pairs; a cycle lasts as long
    as its longest pulse.
    """

    cycles: tuple[tuple[int, ...], ...]       # gate indices, temporal order kept
    cycle_durations: tuple[float, ...]

    @property
    def n_cycles(self) -> int:
        return len(self.cycles)

    @property
    def parallel_time(self) -> float:
        return float(sum(self.cycle_durations))

    def flattened(self) -> tuple[int, ...]:
        """Gate indices in cycle-major order (a valid temporal reordering)."""
        return tuple(k for cyc in self.cycles for k in cyc)


def exchange_op(q1: int, q2: int, n: int) -> np.ndarray:
    """The exchange (SWAP) permutation on qubits (q1, q2) of an n-register."""
    same, rows_a, rows_b = exchange_rows(n, q1, q2)
    op = np.zeros((1 << n, 1 << n), dtype=complex)
    op[same, same] = 1.0
    op[rows_b, rows_a] = 1.0
    op[rows_a, rows_b] = 1.0
    return op


def exchange_unitary(gate: PulseGate, n: int, sign: int = +1) -> np.ndarray:
    """exp(sign*i*t*E) for one pulse, in closed form."""
    _check_sign(sign)
    same, rows_a, rows_b = exchange_rows(n, gate.q1, gate.q2)
    u = np.eye(1 << n, dtype=complex)
    kernel.apply_exchange_inplace(u, same, rows_a, rows_b,
                                  math.cos(gate.t), sign * math.sin(gate.t))
    return u


def evolve_columns(seq: ExchangeSequence, mat: np.ndarray, sign: int = +1) -> np.ndarray:
    """Apply the sequence unitary to the columns of ``mat``.

    Returns W @ mat without forming W; this is the hot path for projected
    evaluation, where ``mat`` has only a few columns.
    """
    _check_sign(sign)
    x = np.array(mat, dtype=complex, order="C")
    if x.ndim != 2 or x.shape[0] != 1 << seq.n_physical:
        raise ValueError(f"matrix shape {x.shape} does not match a "
                         f"{seq.n_physical}-qubit register")
    n = seq.n_physical
    for g in seq.gates:
        same, rows_a, rows_b = exchange_rows(n, g.q1, g.q2)
        kernel.apply_exchange_inplace(x, same, rows_a, rows_b,
                                      math.cos(g.t), sign * math.sin(g.t))
    return x


def evaluate_sequence(seq: ExchangeSequence, sign: int = +1) -> np.ndarray:
    """Total unitary of the sequence (first-listed gate applied first)."""
    return evolve_columns(seq, np.eye(1 << seq.n_physical, dtype=complex), sign)


def sequence_projected(seq: ExchangeSequence, p: LogicalProjector,
                       sign: int = +1) -> np.ndarray:
    """P† W P for the sequence unitary W, without forming W."""
    if 1 << seq.n_physical != p.matrix.shape[0]:
        raise ValueError("projector does not match the register size")
    return p.matrix.conj().T @ evolve_columns(seq, p.matrix, sign)


def schedule_parallel(seq: ExchangeSequence) -> Schedule:
    """Greedy earliest-cycle packing preserving per-qubit gate order."""
    last_cycle = {}
    cycles: list[list[int]] = []
    for k, g in enumerate(seq.gates):
        c = max(last_cycle.get(g.q1, 0), last_cycle.get(g.q2, 0)) + 1
        if c > len(cycles):
            cycles.append([])
        cycles[c - 1].append(k)
        last_cycle[g.q1] = c
        last_cycle[g.q2] = c
    durations = tuple(max(abs(seq.gates[k].t) for k in cyc) for cyc in cycles)
    return Schedule(cycles=tuple(tuple(c) for c in cycles),
                    cycle_durations=durations)


def wrap_times(seq: ExchangeSequence) -> ExchangeSequence:
    """Reduce every time into [0, 2*pi); evaluation is unchanged exactly."""
    return seq.with_times([g.t % (2 * math.pi) for g in seq.gates])


def serialize(seq: ExchangeSequence) -> str:
    """Sequence file document; times round-trip exactly through ``parse``."""
    doc = {
        "version": FORMAT_VERSION,
        "code": seq.code.value,
        "n_physical": seq.n_physical,
        "gates": [{"q1": g.q1, "q2": g.q2, "t": g.t} for g in seq.gates],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse(text: str) -> ExchangeSequence:
    """Parse a sequence document, reporting the first malformed entry."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFormatError(f"invalid JSON at line {exc.lineno}, "
                                  f"column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SequenceFormatError("top level must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise SequenceFormatError(f"unknown version {version!r} "
                                  f"(expected {FORMAT_VERSION})")
    try:
        code = Code(doc.get("code"))
    except ValueError:
        raise SequenceFormatError(f"field 'code': unknown code {doc.get('code')!r}") from None
    n = doc.get("n_physical")
    if not isinstance(n, int) or n < code.block_size:
        raise SequenceFormatError(f"field 'n_physical': expected an integer >= "
                                  f"{code.block_size}, got {n!r}")
    raw_gates = doc.get("gates")
    if not isinstance(raw_gates, list):
        raise SequenceFormatError("field 'gates': expected an array")
    gates = []
    for k, rec in enumerate(raw_gates):
        where = f"gates[{k}]"
        if not isinstance(rec, dict):
            raise SequenceFormatError(f"{where}: expected an object")
        q1, q2, t = rec.get("q1"), rec.get("q2"), rec.get("t")
        if not isinstance(q1, int) or not isinstance(q2, int):
            raise SequenceFormatError(f"{where}: q1/q2 must be integers")
        if q1 == q2:
            raise SequenceFormatError(f"{where}: q1 and q2 must be distinct")
        if not (1 <= q1 <= n and 1 <= q2 <= n):
            raise SequenceFormatError(f"{where}: qubits ({q1}, {q2}) outside "
                                      f"register of size {n}")
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise SequenceFormatError(f"{where}: t must be a number")
        gates.append(PulseGate(q1, q2, float(t)))
    return ExchangeSequence(n_physical=n, code=code, gates=tuple(gates))


def load(path) -> ExchangeSequence:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(seq: ExchangeSequence, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(seq))


def parse_layout(text: str):
    """Parse a layout file: a sequence document whose times are optional.

    Returns (pairs, n_physical, code).  Present times are ignored except
    that records must still be well-formed.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFormatError(f"invalid JSON at line {exc.lineno}, "
                                  f"column {exc.colno}: {exc.msg}") from exc
    if isinstance(doc, dict) and isinstance(doc.get("gates"), list):
        for rec in doc["gates"]:
            if isinstance(rec, dict):
                rec.setdefault("t", 0.0)
    seq = parse(json.dumps(doc))
    return seq.pairs, seq.n_physical, seq.code


def _check_sign(sign: int) -> None:
    if sign not in (+1, -1):
        raise ValueError(f"sign convention must be +1 or -1, got {sign!r}")
