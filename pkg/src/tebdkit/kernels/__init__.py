"""Two-site update kernel with a compiled core and a pure-numpy fallback.

The backend is selected once at import time.  Set ``TEBDKIT_KERNEL`` to
``compiled`` or ``python`` to force a backend (``compiled`` raises if the
extension is missing); the default ``auto`` prefers the compiled core.
"""

from __future__ import annotations

import os

from . import pykernel

_requested = os.environ.get("TEBDKIT_KERNEL", "auto").lower()
if _requested not in ("auto", "compiled", "python"):
    raise ImportError(f"TEBDKIT_KERNEL must be auto, compiled, or python; got {_requested!r}")

_compiled = None
if _requested in ("auto", "compiled"):
    try:
        from . import _core as _compiled
    except ImportError:
        _compiled = None
    if _requested == "compiled" and _compiled is None:
        raise ImportError("TEBDKIT_KERNEL=compiled but the compiled kernel is not built")

_active = _compiled if (_compiled is not None and _requested != "python") else pykernel

BACKEND = "compiled" if _active is not pykernel else "python"
two_site_update = _active.two_site_update


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name (for benchmarks/tests)."""
    backends: dict[str, object] = {"python": pykernel}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends
