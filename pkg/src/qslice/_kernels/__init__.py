"""Kernel backend selection.

The hot inner loops (coefficient convolution, batch polynomial evaluation,
batch Laurent-window evaluation) exist twice: a compiled Cython extension
`_native` and a pure-numpy fallback `_numpy` with identical contracts.  The
native backend is preferred when importable; QSLICE_KERNELS=python|native
forces a choice (forcing native raises if the extension is missing).
"""

import os

from . import _numpy

_forced = os.environ.get("QSLICE_KERNELS", "").strip().lower()

if _forced == "python":
    _impl = _numpy
elif _forced == "native":
    from . import _native as _impl  # ImportError is deliberate here
else:
    try:
        from . import _native as _impl
    except ImportError:
        _impl = _numpy

BACKEND = _impl.BACKEND
star_convolve = _impl.star_convolve
poly_eval = _impl.poly_eval
laurent_eval = _impl.laurent_eval
quat_mul = _numpy.quat_mul  # broadcasting helper; numpy is already optimal


def backends():
    """Importable kernel modules keyed by name (for tests and benchmarks)."""
    found = {"python": _numpy}
    try:
        from . import _native
        found["native"] = _native
    except ImportError:
        pass
    return found
