"""Codebook scan kernels: compiled extension with a pure-numpy fallback.

The compiled module is used when it was built; set BISLAB_KERNEL=pure to force
the fallback (used by the benchmark and the backend-agreement tests).  Both
implementations perform the same IEEE-double operations, so their outputs are
bit-identical.
"""

import os

from . import _scan_py

try:
    from . import _scan_c

    _HAVE_COMPILED = True
except ImportError:
    _scan_c = None
    _HAVE_COMPILED = False

if os.environ.get("BISLAB_KERNEL", "").lower() == "pure" or not _HAVE_COMPILED:
    _impl = _scan_py
    BACKEND = "pure"
else:
    _impl = _scan_c
    BACKEND = "compiled"

scan_triples = _impl.scan_triples

__all__ = ["scan_triples", "BACKEND", "backends"]


def backends():
    """Mapping of available backend name -> scan_triples implementation."""
    out = {"pure": _scan_py.scan_triples}
    if _HAVE_COMPILED:
        out["compiled"] = _scan_c.scan_triples
    return out
