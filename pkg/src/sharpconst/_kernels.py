"""Backend selection for the hot kernels.

The mesh-assembly kernels prefer the compiled extension ``sharpconst._core``
(scalar loops beat the vectorised fallback by 5-7x; see
benchmarks/bench_kernels.py).  The quotient energy ``pq_energy`` always uses
the NumPy twin: its cost is one ``pow`` per grid point and NumPy's SIMD
power loops beat a scalar libm loop by 2-3x, so the "fallback" is the fast
path there.  Setting ``SHARPCONST_PURE_PYTHON=1`` forces the NumPy
implementations everywhere; both backends return identical values
(tests/test_kernels.py).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SHARPCONST_PURE_PYTHON", "") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
tri_assembly_arrays = _impl.tri_assembly_arrays
edge_mass_arrays = _impl.edge_mass_arrays
pq_energy = _kernels_py.pq_energy


def backend_name() -> str:
    """'compiled' when the extension serves the assembly kernels, 'numpy'
    otherwise."""
    return BACKEND
