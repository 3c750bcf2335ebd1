import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from syzlab import echelon, oracle

needs_cython = pytest.mark.skipif(echelon.BACKEND != "cython", reason="compiled kernel not built")


def to_csr(rows):
    indptr, indices, data = [0], [], []
    for r in rows:
        for c, x in enumerate(r):
            if x:
                indices.append(c)
                data.append(x)
        indptr.append(len(indices))
    return indptr, indices, data


def from_csr(ptr, idx, dat, ncols):
    out = []
    for k in range(len(ptr) - 1):
        row = [0] * ncols
        for j in range(ptr[k], ptr[k + 1]):
            row[int(idx[j])] = int(dat[j])
        out.append(row)
    return out


P = 32003
matrices = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.sampled_from([0, 0, 0, 1, 2, P - 1, 17]), min_size=n, max_size=n),
                       min_size=1, max_size=10))


def test_small_example_both_backends():
    rows = [[1, 2, 0], [2, 4, 0], [0, 1, 1]]
    for b in {"python", echelon.BACKEND}:
        ptr, idx, dat, flags = echelon.echelonize(*to_csr(rows), 3, 7, backend=b)
        assert list(flags) == [1, 0, 1]
        assert from_csr(ptr, idx, dat, 3) == [[1, 0, 5], [0, 0, 0], [0, 1, 1]]


@given(matrices)
def test_python_backend_gives_reduced_row_echelon_form(rows):
    ncols = len(rows[0])
    ptr, idx, dat, flags = echelon.echelonize(*to_csr(rows), ncols, P, backend="python")
    got = [r for r, f in zip(from_csr(ptr, idx, dat, ncols), flags) if f]
    R, piv = oracle.rref(np.array(rows, dtype=np.int64), P)
    want = [[int(x) for x in R[i]] for i in range(len(piv))]
    assert sorted(got) == sorted(want)


@needs_cython
@given(matrices, st.data())
def test_backends_agree(rows, data):
    ncols = len(rows[0])
    # trusted pivots: take the reduced rows of a prefix, then feed the rest
    n_fixed = data.draw(st.integers(0, len(rows) - 1))
    ptr, idx, dat, flags = echelon.echelonize(*to_csr(rows[:n_fixed]), ncols, P, backend="python")
    fixed = [r for r, f in zip(from_csr(ptr, idx, dat, ncols), flags) if f]
    full = fixed + rows[n_fixed:]
    back = data.draw(st.integers(len(fixed), len(full)))
    a = echelon.echelonize(*to_csr(full), ncols, P, len(fixed), back, backend="python")
    b = echelon.echelonize(*to_csr(full), ncols, P, len(fixed), back, backend="cython")
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def test_unknown_compiled_backend_raises(monkeypatch):
    monkeypatch.setattr(echelon, "_compiled", None)
    with pytest.raises(RuntimeError):
        echelon.echelonize([0, 1], [0], [1], 1, 7, backend="cython")


def _run(code, **env):
    e = dict(os.environ)
    e.update(env)
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=e, check=True).stdout


def test_pure_python_switch_selects_fallback():
    assert _run("import syzlab; print(syzlab.BACKEND)", SYZLAB_PURE_PYTHON="1").strip() == "python"


def test_fallback_gives_the_same_resolution():
    code = ("from syzlab import *\n"
            "R = quotient_ring(['x','y','z'], ['x^2','x*y','y*z'])\n"
            "F = minimal_free_resolution(residue_field(R), 4)\n"
            "print(sorted(F.betti.entries.items()))\n")
    assert _run(code, SYZLAB_PURE_PYTHON="1") == _run(code, SYZLAB_PURE_PYTHON="0")
