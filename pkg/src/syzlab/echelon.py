"""Backend selection for the sparse echelon kernel.

The compiled ``_echelon`` extension is used when it imports; otherwise the
pure-Python ``echelon_py`` implementation is used.  Setting the environment
variable ``SYZLAB_PURE_PYTHON=1`` forces the fallback.

Contract of :func:`echelonize` (both backends):

* input rows are CSR arrays (``indptr``, ``indices``, ``data``) with column
  indices strictly increasing inside each row; column 0 is the largest term;
* rows ``[0, n_fixed)`` are trusted pivots with pairwise distinct leading
  columns and are never reduced;
* every later row is fully reduced against the pivots accepted so far, in
  order; a non-zero result is made monic and becomes a pivot (flag 1);
* accepted rows with index ``>= backreduce_from`` are finally reduced against
  all pivots other than their own;
* output is CSR for rows ``[n_fixed, nrows)`` (empty rows for flag 0).
"""

from __future__ import annotations

import os

import numpy as np

from syzlab import echelon_py

if os.environ.get("SYZLAB_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from syzlab import _echelon as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def echelonize(indptr, indices, data, ncols, p, n_fixed=0, backreduce_from=0, backend=None):
    impl = backend or BACKEND
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    data = np.ascontiguousarray(data, dtype=np.int64)
    if impl == "cython":
        if _compiled is None:
            raise RuntimeError("compiled echelon kernel is not available")
        return _compiled.echelonize(indptr, indices, data, int(ncols), int(p),
                                    int(n_fixed), int(backreduce_from))
    return echelon_py.echelonize(indptr, indices, data, int(ncols), int(p),
                                 int(n_fixed), int(backreduce_from))
