"""Process-wide numeric tolerance.

The default absolute tolerance used by every floating comparison in the
package is 1e-9.  It can be overridden with the ``G2CUBICS_TOLERANCE``
environment variable, or at runtime with :func:`set_tolerance` (which the
CLI ``--tolerance`` flag calls).
"""
import os

DEFAULT_TOLERANCE = 1e-9
ENV_VAR = "G2CUBICS_TOLERANCE"


def _from_env():
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return DEFAULT_TOLERANCE
    value = float(raw)
    if not value > 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {raw!r}")
    return value


_tolerance = _from_env()


def get_tolerance() -> float:
    return _tolerance


def set_tolerance(value: float) -> None:
    global _tolerance
    value = float(value)
    if not value > 0:
        raise ValueError("tolerance must be positive")
    _tolerance = value


def resolve(tol=None) -> float:
    """Return ``tol`` if given, otherwise the global tolerance."""
    return _tolerance if tol is None else float(tol)
