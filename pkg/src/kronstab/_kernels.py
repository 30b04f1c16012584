"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

Set KRONSTAB_PURE=1 to force the fallback (useful for benchmarking and for
debugging suspected extension issues).
"""
from __future__ import annotations

import os

if os.environ.get("KRONSTAB_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

cloud_angles = _impl.cloud_angles
max_circular_gap = _impl.max_circular_gap
fattened_union_measure = _impl.fattened_union_measure

__all__ = ["BACKEND", "cloud_angles", "max_circular_gap", "fattened_union_measure"]
