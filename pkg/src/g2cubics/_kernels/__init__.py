"""Hot kernels for exact group closure and bulk automorphism checks.

The compiled ``_fast`` module is used when it was built; otherwise the
``_pure`` fallback is selected.  Set ``G2CUBICS_PURE=1`` to force the fallback.
"""
import os

from . import _pure

if os.environ.get("G2CUBICS_PURE"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = _impl.NAME
closure = _impl.closure
automorphism_residuals = _impl.automorphism_residuals
element_orders = _impl.element_orders


def backends():
    """All importable kernel modules, keyed by name (used by the benchmark)."""
    found = {"pure": _pure}
    try:
        from . import _fast
        found["cython"] = _fast
    except ImportError:
        pass
    return found
