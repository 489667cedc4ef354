"""Figures of merit for encoded gates.

* Makhlin local-equivalence invariants (M1, M2) of a projected two-qubit
  gate: equal for gates related by single-qubit unitaries; (0, 1) is the
  CNOT class.
* Leakage: the deficit of squared projected matrix elements, zero exactly
  when the operation preserves the logical subspace.
* The search fitness F = f + leakage, where f is the invariant mismatch.
* Phase-aligned max-element distance, the comparison metric for exact gates.

M2 is kept complex throughout: off the optimum the defining formula is
complex-valued, and the fitness uses the complex modulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .encoding import LogicalProjector, project_logical

# Bell-basis change used to compute the invariants.
BELL_Q = np.array([[1, 0, 0, 1j],
                   [0, 1j, 1, 0],
                   [0, 1j, -1, 0],
                   [1, 0, 0, -1j]], dtype=complex) / np.sqrt(2)

# Below this |det M| the projected gate is leaking badly enough that the
# invariants are numerically meaningless.
DET_FLOOR = 1e-8

TANGENT_POLE_ATOL = 1e-9


class NearSingular(ValueError):
    """Projected gate too singular for invariants; inspect leakage instead."""


class TangentPole(ValueError):
    """Argument too close to an odd multiple of pi/2."""


class MakhlinInvariants(NamedTuple):
    m1: complex
    m2: complex


CNOT_INVARIANTS = MakhlinInvariants(0j, 1 + 0j)


@dataclass(frozen=True)
class FitnessReport:
    """Invariant mismatch f, leakage, and their sum (the search objective)."""

    f: float
    leakage: float

    @property
    def total(self) -> float:
        return self.f + self.leakage


def bell_transform(m: np.ndarray) -> np.ndarray:
    """Q† M Q with Q the fixed Bell-basis change."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    return BELL_Q.conj().T @ m @ BELL_Q


def makhlin(m: np.ndarray) -> MakhlinInvariants:
    """Local-equivalence invariants of a 4x4 gate.

    M1 = tr^2(m) / (16 det M) and M2 = (tr^2(m) - tr(m^2)) / (4 det M)
    with m = M_B^T M_B in the Bell basis.  Insensitive to global phase.

    Raises NearSingular when |det M| < 1e-8, which signals a leaking or
    non-unitary projected gate.
    """
    m = np.asarray(m, dtype=complex)
    det = complex(np.linalg.det(m))
    if abs(det) < DET_FLOOR:
        raise NearSingular(f"|det M| = {abs(det):.3e} below {DET_FLOOR:g}; "
                           "check the leakage first")
    mb = bell_transform(m)
    mm = mb.T @ mb
    tr = complex(np.trace(mm))
    tr_sq = complex(np.trace(mm @ mm))
    return MakhlinInvariants(tr * tr / (16 * det), (tr * tr - tr_sq) / (4 * det))


def leakage(w: np.ndarray, p: LogicalProjector) -> float:
    """Deficit of squared projected elements, clamped at zero.

    For two encoded blocks this is 4 - sum |M_ij|^2 with M = P† W P; in
    general the constant is the number of logical basis columns, so the
    single-block case is well-defined too.
    """
    return leakage_projected(project_logical(w, p), p.n_logical_states)


def leakage_projected(m: np.ndarray, n_logical: int) -> float:
    """Leakage from an already-projected M (the hot path)."""
    return max(0.0, n_logical - float(np.sum(np.abs(m) ** 2)))


def fitness(w: np.ndarray, p: LogicalProjector,
            target: MakhlinInvariants = CNOT_INVARIANTS) -> FitnessReport:
    """Invariant mismatch plus leakage against a target invariant pair.

    A near-singular projection gets the penalty f = 2 + leakage so that
    the search objective stays finite and monotone in badness.
    """
    return fitness_projected(project_logical(w, p), target,
                             n_logical=p.n_logical_states)


def fitness_projected(m: np.ndarray, target: MakhlinInvariants = CNOT_INVARIANTS,
                      n_logical: int = 4) -> FitnessReport:
    lam = leakage_projected(m, n_logical)
    try:
        m1, m2 = makhlin(m)
        f = abs(target.m1 - m1) + abs(target.m2 - m2)
    except NearSingular:
        f = 2.0 + lam
    return FitnessReport(f=f, leakage=lam)


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """min over a global phase of the max-element distance |e^{i phi} u - v|.

    The phase is fixed by aligning u with v on v's largest-modulus element,
    which attains the minimum whenever the inputs are close up to phase.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    i, j = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(u[i, j]) == 0.0:
        phase = 1.0 + 0j
    else:
        phase = cmath.exp(1j * (cmath.phase(v[i, j]) - cmath.phase(u[i, j])))
    return float(np.max(np.abs(phase * u - v)))


def correlation_symmetry(t: float, t_bar: float) -> float:
    """tan(t) * tan(t_bar) + 2, the paired-time correlation diagnostic."""
    for name, val in (("t", t), ("t_bar", t_bar)):
        # distance from the nearest odd multiple of pi/2
        r = math.remainder(val - math.pi / 2, math.pi)
        if abs(r) <= TANGENT_POLE_ATOL:
            raise TangentPole(f"{name} = {val!r} is within {TANGENT_POLE_ATOL:g} "
                              "of an odd multiple of pi/2")
    return math.tan(t) * math.tan(t_bar) + 2.0
