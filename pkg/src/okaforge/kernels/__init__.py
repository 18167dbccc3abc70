"""Double-precision hot loops.

The compiled extension is used when it was built; otherwise the numpy
reference implementation is selected at import time.
"""

from . import _pykernels

try:
    from . import _ckernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "compiled" if _compiled is not None else "python"


def use_backend(name):
    """Switch the active implementation; returns the previous backend name."""
    global _impl, BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} is not available (have {sorted(BACKENDS)})")
    previous = BACKEND
    _impl, BACKEND = BACKENDS[name], name
    return previous


def aberth(coeffs, z0, maxiter=500, tol=1e-14):
    return _impl.aberth(coeffs, z0, maxiter, tol)


def newton_pairs(fn, fd, gn, gd, x0, y0, maxiter=60, tol=1e-13):
    return _impl.newton_pairs(fn, fd, gn, gd, x0, y0, maxiter, tol)
