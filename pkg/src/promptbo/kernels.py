"""Matern-5/2 kernel with a compiled core and a pure-Python fallback.

The compiled extension is optional; set PROMPTBO_FORCE_PY=1 to force the
numpy implementation even when the extension is built.
"""

import os

from . import _matern_py

if os.environ.get("PROMPTBO_FORCE_PY"):
    _impl = _matern_py
else:
    try:
        from . import _matern_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _matern_py

matern52_cross = _impl.matern52_cross
IMPLEMENTATION = _impl.IMPLEMENTATION

__all__ = ["matern52_cross", "IMPLEMENTATION"]
