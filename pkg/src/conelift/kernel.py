"""Kernel selection: compiled extension when available, pure Python otherwise.

Set CONELIFT_PURE=1 to force the pure-Python kernel (used by the
benchmark and by tests that compare the two implementations).
"""

import os

from . import _kernel_py

if os.environ.get("CONELIFT_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel_cy as _impl
    except ImportError:  # pragma: no cover - depends on build environment
        _impl = _kernel_py

normal_form = _impl.normal_form
order_key = _impl.order_key
monomial_divides = _impl.monomial_divides
BACKEND = _impl.BACKEND
