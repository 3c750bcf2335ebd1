"""Pure-Python sparse row echelon over F_p.

Reference implementation of the contract shared with the compiled
``syzlab._echelon`` module; see :func:`syzlab.echelon.echelonize`.
"""

from __future__ import annotations

import heapq

import numpy as np


def _reduce(acc: dict, pivots: dict, p: int, skip: int = -1) -> None:
    """Eliminate every pivot column from the dict accumulator ``acc``."""
    heap = list(acc)
    heapq.heapify(heap)
    seen = set()
    while heap:
        c = heapq.heappop(heap)
        if c in seen:
            continue
        seen.add(c)
        v = acc.get(c)
        if not v or c == skip:
            continue
        row = pivots.get(c)
        if row is None:
            continue
        cols, vals = row
        for k in range(len(cols)):
            cc = cols[k]
            nv = (acc.get(cc, 0) - v * vals[k]) % p
            if nv:
                if cc not in acc:
                    heapq.heappush(heap, cc)
                acc[cc] = nv
            else:
                acc.pop(cc, None)


def echelonize(indptr, indices, data, ncols, p, n_fixed, backreduce_from):
    nrows = len(indptr) - 1
    pivots: dict[int, tuple[list, list]] = {}
    for r in range(n_fixed):
        a, b = indptr[r], indptr[r + 1]
        cols = [int(c) for c in indices[a:b]]
        vals = [int(v) for v in data[a:b]]
        inv = pow(vals[0], p - 2, p)
        pivots[cols[0]] = (cols, [(v * inv) % p for v in vals])

    results: list = []
    flags = np.zeros(nrows - n_fixed, dtype=np.int8)
    for r in range(n_fixed, nrows):
        a, b = indptr[r], indptr[r + 1]
        acc = {int(c): int(v) % p for c, v in zip(indices[a:b], data[a:b]) if int(v) % p}
        _reduce(acc, pivots, p)
        if not acc:
            results.append(None)
            continue
        cols = sorted(acc)
        inv = pow(acc[cols[0]], p - 2, p)
        vals = [(acc[c] * inv) % p for c in cols]
        pivots[cols[0]] = (cols, vals)
        results.append(cols[0])
        flags[r - n_fixed] = 1

    out_rows = []
    for k, lead in enumerate(results):
        if lead is None:
            out_rows.append(([], []))
            continue
        cols, vals = pivots[lead]
        if k + n_fixed >= backreduce_from:
            acc = dict(zip(cols, vals))
            _reduce(acc, pivots, p, skip=lead)
            cols = sorted(acc)
            vals = [acc[c] for c in cols]
        out_rows.append((cols, vals))

    out_ptr = np.zeros(len(out_rows) + 1, dtype=np.int64)
    for k, (cols, _) in enumerate(out_rows):
        out_ptr[k + 1] = out_ptr[k] + len(cols)
    out_idx = np.fromiter((c for cols, _ in out_rows for c in cols), dtype=np.int64,
                          count=int(out_ptr[-1]))
    out_dat = np.fromiter((v for _, vals in out_rows for v in vals), dtype=np.int64,
                          count=int(out_ptr[-1]))
    return out_ptr, out_idx, out_dat, flags
