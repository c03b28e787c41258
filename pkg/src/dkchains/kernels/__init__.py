"""Kernel selection: compiled int64 extension when available, pure Python otherwise.

The compiled path is only taken when a cheap a-priori bound shows every
intermediate fits in int64; otherwise the exact pure-Python path runs.
Set ``DKCHAINS_PURE=1`` to force the pure path.
"""
import importlib
import os
from array import array

from . import pure

_speedups = None
if os.environ.get("DKCHAINS_PURE") != "1":
    try:
        _speedups = importlib.import_module("._speedups", __name__)
    except ImportError:
        _speedups = None

HAVE_SPEEDUPS = _speedups is not None

# Conservative bound: with |a| <= M_a, |b| <= M_b, an output entry of A@B is a
# sum of at most inner_dim products, so |out| <= M_a * M_b * inner_dim.
_INT64_SAFE = 2**62


def _max_abs(data):
    return max((v if v >= 0 else -v) for v in data.values()) if data else 0


def _to_arrays(data):
    rows = array("q")
    cols = array("q")
    vals = array("q")
    for (i, j), v in data.items():
        rows.append(i)
        cols.append(j)
        vals.append(v)
    return rows, cols, vals


def matmul(nrows_a, ncols_a, da, ncols_b, db):
    if _speedups is not None and da and db:
        ma = _max_abs(da)
        mb = _max_abs(db)
        if ma and mb and ma * mb * ncols_a < _INT64_SAFE:
            ra, ca, va = _to_arrays(da)
            rb, cb, vb = _to_arrays(db)
            rows, cols, vals = _speedups.matmul_arrays(
                nrows_a, ncols_a, ra, ca, va, ncols_b, rb, cb, vb)
            return dict(zip(zip(rows, cols), vals))
    return pure.matmul(nrows_a, ncols_a, da, ncols_b, db)


def kron(nrows_a, ncols_a, da, nrows_b, ncols_b, db):
    if _speedups is not None and da and db:
        ma = _max_abs(da)
        mb = _max_abs(db)
        if (ma and mb and ma * mb < _INT64_SAFE
                and nrows_a * nrows_b < _INT64_SAFE
                and ncols_a * ncols_b < _INT64_SAFE):
            ra, ca, va = _to_arrays(da)
            rb, cb, vb = _to_arrays(db)
            rows, cols, vals = _speedups.kron_arrays(
                nrows_b, ncols_b, ra, ca, va, rb, cb, vb)
            return dict(zip(zip(rows, cols), vals))
    return pure.kron(nrows_a, ncols_a, da, nrows_b, ncols_b, db)
