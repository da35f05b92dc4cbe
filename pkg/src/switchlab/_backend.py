"""Kernel selection: the compiled ``_core`` extension when importable, else ``_pycore``.

Set ``SWITCHLAB_PURE_PYTHON=1`` to force the fallback.
"""

import importlib
import os
from types import ModuleType


def load(name: str) -> ModuleType:
    if name == "compiled":
        return importlib.import_module("switchlab._core")
    if name == "python":
        return importlib.import_module("switchlab._pycore")
    raise ValueError(f"unknown backend {name!r}")


def _select() -> tuple[ModuleType, str]:
    if os.environ.get("SWITCHLAB_PURE_PYTHON", "") not in ("", "0"):
        return load("python"), "python"
    try:
        return load("compiled"), "compiled"
    except ImportError:
        return load("python"), "python"


core, BACKEND = _select()
py = load("python")

# compiled code-based kernels pack edge codes into 64 bits
CODE_BITS = 64


def code_kernel(n: int) -> ModuleType:
    """Kernel module able to handle edge codes on n vertices."""
    if BACKEND == "compiled" and n * (n - 1) // 2 <= CODE_BITS:
        return core
    return py
