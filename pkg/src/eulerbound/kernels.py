"""Kernel dispatch: compiled extension when available, NumPy otherwise.

The two implementations share an exact contract (see _pykernels docstrings);
tests run both when the extension is present, and the benchmark script under
benchmarks/ compares their throughput.
"""

from __future__ import annotations

try:
    from . import _ckernels as _impl

    HAVE_C_KERNELS = True
except ImportError:  # extension not built; NumPy fallback
    from . import _pykernels as _impl

    HAVE_C_KERNELS = False

BACKEND = _impl.backend_name()

prime_sieve = _impl.prime_sieve
additive_convolve = _impl.additive_convolve
sparse_dense_convolve = _impl.sparse_dense_convolve


def available_backends() -> list:
    """Module objects for every importable backend (c first)."""
    out = []
    if HAVE_C_KERNELS:
        from . import _ckernels

        out.append(_ckernels)
    from . import _pykernels

    out.append(_pykernels)
    return out
