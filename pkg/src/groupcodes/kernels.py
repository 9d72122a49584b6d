"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``GROUPCODES_PURE=1`` to force the pure-Python kernels.
"""

import os

from . import _purekernels as pure

compiled = None
if not os.environ.get("GROUPCODES_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # pragma: no cover - depends on build
        compiled = None

_impl = compiled if compiled is not None else pure

BACKEND = "compiled" if compiled is not None else "python"

rref = _impl.rref
min_weight = _impl.min_weight
value_perm_search = _impl.value_perm_search
