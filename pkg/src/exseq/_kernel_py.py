"""Numpy implementation of the exchange-rotation kernel.

Reference version of the compiled extension in ``_kernel.pyx``; the two are
interchangeable (see ``kernel``).
"""

BACKEND = "numpy"


def apply_exchange_inplace(x, same, rows_a, rows_b, c, s):
    """x <- (c*I + i*s*E) @ x, in place.

    ``x`` is a (2**n, m) complex matrix, ``(same, rows_a, rows_b)`` the row
    tables of one exchange pair, and ``c = cos(t)``, ``s = sign * sin(t)``.
    """
    js = 1j * s
    ta = x[rows_a]
    tb = x[rows_b]
    x[rows_a] = c * ta + js * tb
    x[rows_b] = c * tb + js * ta
    x[same] *= complex(c, s)
