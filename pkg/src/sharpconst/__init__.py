"""Sharp constants of classical inequalities of mathematical physics,
cross-verified by independent numerical oracles.

Closed forms live in :mod:`sharpconst.catalog`; the verification side is a
P1 finite-element eigensolver (:mod:`sharpconst.fem2d`) for the quadratic
case and discretised Rayleigh-quotient minimisers plus extremal quadrature
(:mod:`sharpconst.oracle1d`) for the non-quadratic cases.  Hot kernels run
through a compiled extension with a pure NumPy fallback
(:func:`sharpconst.kernel_backend` reports which one is active).
"""

from . import catalog, fem2d, oracle1d, specfun
from ._kernels import backend_name as kernel_backend
from .errors import ConvergenceError, InadmissibleExponents

__all__ = [
    "catalog",
    "fem2d",
    "oracle1d",
    "specfun",
    "kernel_backend",
    "ConvergenceError",
    "InadmissibleExponents",
    "__version__",
]

__version__ = "0.1.0"
