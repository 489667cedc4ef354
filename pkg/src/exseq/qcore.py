"""Dense complex linear algebra for registers of up to ~8 qubits.

Matrices and state vectors are plain ``numpy.ndarray`` objects of dtype
complex128.  Qubit 1 is the leftmost tensor factor, i.e. the most
significant bit of a basis-state index, so ``ket("10")`` is index 2 of a
two-qubit register.  Everything here is immutable-by-convention: functions
return fresh arrays and never modify their arguments.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

# Default tolerance for exact algebraic identities. Dimensions stay <= 256,
# which keeps accumulated rounding far below this.
ATOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def ket(bits: str) -> np.ndarray:
    """Computational basis state from a bit string, qubit 1 leftmost."""
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return vec


def kron(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product; the leftmost argument is the most significant factor."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, (np.asarray(op, dtype=complex) for op in ops))


def matmul_chain(ops) -> np.ndarray:
    """Ordered product ops[0] @ ops[1] @ ... of conformable square matrices."""
    mats = [np.asarray(op, dtype=complex) for op in ops]
    if not mats:
        raise ValueError("matmul_chain needs at least one matrix")
    dim = mats[0].shape[0]
    for m in mats:
        if m.ndim != 2 or m.shape != (dim, dim):
            raise ValueError(f"expected square {dim}x{dim} matrices, got {m.shape}")
    return reduce(np.matmul, mats)


def embed_pair(op4: np.ndarray, q1: int, q2: int, n: int) -> np.ndarray:
    """Embed a two-qubit operator into an n-qubit register.

    Returns the 2**n dimensional operator acting as ``op4`` on qubits
    (q1, q2) and as the identity elsewhere.  Indices are 1-based and may be
    non-adjacent; ``op4`` is indexed with the q1 bit as its most significant
    bit.
    """
    op4 = np.asarray(op4, dtype=complex)
    if op4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got shape {op4.shape}")
    if q1 == q2:
        raise ValueError("qubit indices must be distinct")
    if not (1 <= q1 < q2 <= n):
        raise ValueError(f"need 1 <= q1 < q2 <= {n}, got ({q1}, {q2})")
    dim = 1 << n
    m1 = 1 << (n - q1)
    m2 = 1 << (n - q2)
    idx = np.arange(dim)
    b1 = ((idx & m1) != 0).astype(int)
    b2 = ((idx & m2) != 0).astype(int)
    src = (b1 << 1) | b2
    base = idx & ~(m1 | m2)
    out = np.zeros((dim, dim), dtype=complex)
    for a1 in (0, 1):
        for a2 in (0, 1):
            rows = base | (a1 * m1) | (a2 * m2)
            out[rows, idx] = op4[(a1 << 1) | a2, src]
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    """max |(U†U - I)_ij| <= atol."""
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return max_abs_diff(u.conj().T @ u, np.eye(u.shape[0])) <= atol


def max_abs_diff(a: np.ndarray, b: np.ndarray) -> float:
    """Max-absolute-element distance, the comparison metric used throughout."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
