"""Kernel backend selection.

The two enumeration kernels (finite-field point counting and the
constrained-quadratic grid minimizer) run either through numba's JIT or
through a pure-numpy path.  The env variable BIRIGID_BACKEND selects the
default ("numba" or "numpy"); numba silently falls back to numpy when it
is not importable.  Everything else in the package is exact rational
arithmetic and has no accelerated path.
"""

from __future__ import annotations

import os

ENV_VAR = "BIRIGID_BACKEND"

try:
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    HAVE_NUMBA = False


def resolve_backend(backend: str | None = None) -> str:
    """Return "numba" or "numpy" for the requested/default backend."""
    choice = (backend or os.environ.get(ENV_VAR, "numba")).lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {choice!r} (use 'numba' or 'numpy')")
    if choice == "numba" and not HAVE_NUMBA:
        return "numpy"
    return choice
