"""Hot loops: the compiled extension when built, else the pure-Python copy."""

import os

try:
    if os.environ.get("GIGSAW_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from ._ckernels import connected_subsets, summand_search

    BACKEND = "cython"
except ImportError:
    from ._pykernels import connected_subsets, summand_search

    BACKEND = "python"

__all__ = ["BACKEND", "connected_subsets", "summand_search"]
