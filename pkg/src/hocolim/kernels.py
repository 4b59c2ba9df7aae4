"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``HOCOLIM_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
_c = None
if not os.environ.get("HOCOLIM_PURE_PYTHON"):
    try:
        from . import _ckernels as _c
        BACKEND = "cython"
    except ImportError:
        _c = None


def check_identities(sizes, faces, degens):
    if _c is not None and sum(sizes) > 64:
        return _c.check_identities(sizes, faces, degens)
    return _pykernels.check_identities(sizes, faces, degens)


def smith_invariants(rows, ncols):
    """Invariant factors of a sparse integer matrix given as row dicts."""
    if _c is not None and rows and ncols:
        nrows = sum(1 for r in rows if r)
        if nrows:
            dense = [[0] * ncols for _ in range(nrows)]
            k = 0
            for r in rows:
                if r:
                    for c, v in r.items():
                        dense[k][c] = v
                    k += 1
            try:
                return _pykernels._normalise(_c.dense_diagonal(dense))
            except OverflowError:
                pass
    return _pykernels.smith_invariants(rows, ncols)
