"""Basis-row tables for exchange operators.

The exchange of qubits (q1, q2) permutes basis states by swapping the two
bits.  Rows where the bits agree are fixed points; the rest pair up.  The
rotation kernels consume these tables, so they are cached per (n, q1, q2).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def exchange_rows(n: int, q1: int, q2: int):
    """Return (same, rows_a, rows_b) index arrays for the (q1, q2) swap.

    ``same`` holds the fixed basis states, and ``rows_a[i] <-> rows_b[i]``
    are the swapped pairs.  Indices are 1-based with qubit 1 the most
    significant bit.
    """
    if not (1 <= q1 <= n and 1 <= q2 <= n) or q1 == q2:
        raise ValueError(f"invalid qubit pair ({q1}, {q2}) for n={n}")
    m1 = 1 << (n - q1)
    m2 = 1 << (n - q2)
    idx = np.arange(1 << n)
    b1 = (idx & m1) != 0
    b2 = (idx & m2) != 0
    same = idx[b1 == b2].astype(np.intp)
    rows_a = idx[b1 & ~b2].astype(np.intp)
    rows_b = rows_a ^ (m1 | m2)
    for arr in (same, rows_a, rows_b):
        arr.setflags(write=False)
    return same, rows_a, rows_b
