"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``MNOV_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py as python_impl

compiled_impl = None
if not os.environ.get("MNOV_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_impl  # type: ignore[no-redef]
    except ImportError:
        compiled_impl = None

_impl = compiled_impl or python_impl

PRIME = python_impl.PRIME
BACKEND = "compiled" if compiled_impl is not None else "python"
rank_mod_p = _impl.rank_mod_p
dense_rank_mod_p = _impl.dense_rank_mod_p
