"""Backend selection for the hot kernels and size gates for exhaustive routines.

Set ``SGFLOW_NUMBA=0`` to force the pure numpy/Python kernels (numba is also
skipped automatically when it cannot be imported).  ``SGF_SEARCH_GATE``
overrides the edge-count gate used by the backtracking searches.
"""

from __future__ import annotations

import os

from .errors import GateExceeded

_FALSY = {"0", "false", "no", "off"}

USE_NUMBA = os.environ.get("SGFLOW_NUMBA", "1").strip().lower() not in _FALSY

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False


def kernel(fn):
    """Compile ``fn`` with ``numba.njit`` when the numba backend is active.

    The undecorated function stays reachable as ``.py_func`` either way, which
    is what the benchmark uses to time both paths in one process.
    """
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn


SEARCH_GATE = 24
FLOW_ORACLE_GATE = 20
CUT_VERTEX_GATE = 16
NEGATIVENESS_VERTEX_GATE = 20
TUTTE_VERTEX_GATE = 12


def search_gate(default: int) -> int:
    raw = os.environ.get("SGF_SEARCH_GATE")
    if raw is None or not raw.strip():
        return default
    return int(raw)


def check_gate(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise GateExceeded(f"{what}: size {size} exceeds gate {limit}")
