"""Kernel backend selection.

Imports the compiled extension when it is available and falls back to the
numpy implementation otherwise.  Set ``EXSEQ_KERNEL=numpy`` to force the
fallback (used by the benchmark and by the backend-parity tests).
"""

import os

_forced = os.environ.get("EXSEQ_KERNEL", "").lower()
if _forced in ("py", "python", "numpy"):
    from . import _kernel_py as _impl
elif _forced in ("", "c", "cython", "compiled"):
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced:
            raise ImportError("EXSEQ_KERNEL requested the compiled kernel, "
                              "but the extension is not built")
        from . import _kernel_py as _impl
else:
    raise ValueError(f"unrecognized EXSEQ_KERNEL value: {_forced!r}")

BACKEND = _impl.BACKEND
apply_exchange_inplace = _impl.apply_exchange_inplace
