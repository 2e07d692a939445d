"""Backend selection for the PBW normal-ordering kernel.

The compiled extension is used when it imports; setting ``GENTODA_PURE=1``
forces the pure-Python kernel.
"""

from __future__ import annotations

import os

from . import _pbw_py

try:
    from . import _pbw_core
except ImportError:  # extension not built
    _pbw_core = None

_BACKENDS = {"python": _pbw_py.PBWKernel}
if _pbw_core is not None:
    _BACKENDS["compiled"] = _pbw_core.PBWKernel

if os.environ.get("GENTODA_PURE") or _pbw_core is None:
    _active = "python"
else:
    _active = "compiled"

_kernels: dict[tuple[str, int], object] = {}


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _active = name


def get_kernel(n: int, backend: str | None = None):
    name = backend or _active
    key = (name, n)
    k = _kernels.get(key)
    if k is None:
        k = _kernels[key] = _BACKENDS[name](n)
    return k


def clear_caches() -> None:
    _kernels.clear()
