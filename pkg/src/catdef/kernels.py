"""Kernel backend selector.

Prefers the compiled extension (``catdef._kernels``, built from
``_kernels.pyx``); falls back to the pure-Python module.  Set
``CATDEF_PURE=1`` to force the fallback.  ``BACKEND`` reports which one is
live; both expose the identical function surface and agree result-for-result
(tests/test_kernels.py checks this, benchmarks/bench_kernels.py times it).
"""

import os

from . import _kernels_py

if os.environ.get("CATDEF_PURE") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND

assoc_witness = _impl.assoc_witness
identity_witness = _impl.identity_witness
find_inverse = _impl.find_inverse
functor_witness = _impl.functor_witness
naturality_witness = _impl.naturality_witness
universal_cones = _impl.universal_cones


def pure():
    """The pure-Python module, regardless of the selected backend."""
    return _kernels_py
