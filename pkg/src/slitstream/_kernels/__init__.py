"""Hot-kernel backend selection.

The compiled core (_fastcore, Cython) is used when its extension module
imported successfully; otherwise the pure-Python twin (_purepy) takes
over with identical semantics. Set SLITSTREAM_BACKEND=python or
=compiled before import to force a choice (compiled raises if the
extension is unavailable).
"""

import os

from ._driver import CODE_REASONS

_forced = os.environ.get("SLITSTREAM_BACKEND", "")
if _forced not in ("", "python", "compiled"):
    raise ImportError(f"SLITSTREAM_BACKEND must be 'python' or 'compiled', got {_forced!r}")

if _forced == "python":
    from . import _purepy as _impl
else:
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced == "compiled":
            raise
        from . import _purepy as _impl

BACKEND = _impl.BACKEND_NAME
two_slit_current = _impl.two_slit_current
trace_two_slit = _impl.trace_two_slit
