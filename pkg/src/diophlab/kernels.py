"""Scan kernel selection: compiled extension when available, numpy fallback.

DIOPHLAB_FORCE_KERNEL=python|cython overrides autodetection; forcing the
extension when it is not built raises immediately rather than silently
falling back.
"""

from __future__ import annotations

import os

from . import _scan_py

shell_points = _scan_py.shell_points


def _load():
    forced = os.environ.get("DIOPHLAB_FORCE_KERNEL", "").strip().lower()
    if forced == "python":
        return _scan_py
    if forced == "cython":
        from . import _scanext

        return _scanext
    if forced:
        raise ValueError(
            f"DIOPHLAB_FORCE_KERNEL must be 'python' or 'cython', got {forced!r}"
        )
    try:
        from . import _scanext

        return _scanext
    except ImportError:
        return _scan_py


_kernel = _load()
scan_stream = _kernel.scan_stream
KERNEL_NAME = _kernel.KERNEL_NAME
