"""Precision defaults shared across modules."""

from __future__ import annotations

import os

DEFAULT_PRECISION_BITS = 256
# Hard ceiling for automatic precision escalation loops.
PRECISION_CAP_BITS = 1 << 12


def default_precision() -> int:
    raw = os.environ.get("DIOPHLAB_PRECISION_BITS")
    if raw:
        try:
            val = int(raw)
        except ValueError:
            raise ValueError(
                f"DIOPHLAB_PRECISION_BITS must be an integer, got {raw!r}"
            ) from None
        if val < 8:
            raise ValueError("DIOPHLAB_PRECISION_BITS must be at least 8")
        return val
    return DEFAULT_PRECISION_BITS
