"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set QSC_NO_SPEEDUPS=1 to force the numpy fallback (used by the bench command
and the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("QSC_NO_SPEEDUPS"):
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

degree_matrix = _impl.degree_matrix
group_minmax = _impl.group_minmax


def backend_name() -> str:
    return _impl.BACKEND


def backends():
    """All importable backends, for benchmarking."""
    found = {"numpy": _kernels_py}
    try:
        from . import _speedups

        found["cython"] = _speedups
    except ImportError:
        pass
    return found
