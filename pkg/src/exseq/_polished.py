"""Simplex-refined times for the numerically found builtin sequences.

Generated by ``tools/make_polished.py``; do not edit by hand.  Each entry
keeps the builtin's pulse layout and replaces only the times.
"""

POLISHED_TIMES: dict[str, tuple[float, ...]] = {}
