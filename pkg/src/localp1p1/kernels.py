"""Kernel selector: compiled extension when built, pure Python otherwise.

Set LOCALP1P1_PURE=1 to force the fallback (the benchmark uses this).
"""

from __future__ import annotations

import os

from . import kernels_py

if os.environ.get("LOCALP1P1_PURE") == "1":
    conv_dense = kernels_py.conv_dense
    IMPL = kernels_py.IMPL
else:
    try:
        from . import _kernels

        conv_dense = _kernels.conv_dense
        IMPL = _kernels.IMPL
    except ImportError:
        conv_dense = kernels_py.conv_dense
        IMPL = kernels_py.IMPL

tri_table = kernels_py.tri_table
