"""Dense linear-algebra oracle for graded pieces.

Everything here works over the ambient polynomial ring S one degree at a time:
a graded piece of a module ``M = coker(rel)`` over ``R = S/I`` is the quotient
``V_e / W_e`` of the degree-e part of a free S-module by the span of all
monomial multiples of the relations and of ``I * e_j`` (using the ideal
generators exactly as given, never a Groebner basis).  Kernels, ranks and
quotients are computed with a small modular Gaussian elimination on numpy
arrays.  Nothing in this module calls the Groebner engine; it exists so the
main path can be checked against an independent computation in low degrees.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np


# ---------------------------------------------------------------- modular linear algebra

def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    if A.size == 0:
        return A.reshape(0, A.shape[1] if A.ndim == 2 else 0), []
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, c in enumerate(piv):
            out[t, c] = (-R[i, f]) % p
    return out


# ---------------------------------------------------------------- monomials

@lru_cache(maxsize=None)
def monomials(nvars: int, d: int) -> tuple:
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return tuple(sorted(out))


def _pdeg(f: dict) -> int:
    return sum(next(iter(f)))


def _mul(f: dict, m: tuple, p: int) -> dict:
    return {tuple(a + b for a, b in zip(k, m)): c % p for k, c in f.items()}


# ---------------------------------------------------------------- graded pieces of modules

class Piece:
    """Degree-e piece V/W of a graded module given as a lifted cokernel."""

    def __init__(self, index: dict, W: np.ndarray, p: int):
        self.index = index                      # (comp, mono) -> column
        self.p = p
        self.n = len(index)
        self.W, self.wpiv = rref(W, p) if W.size else (np.zeros((0, self.n), np.int64), [])
        wp = set(self.wpiv)
        self.free = [c for c in range(self.n) if c not in wp]   # quotient coordinates

    @property
    def dim(self) -> int:
        return len(self.free)

    def vector(self, v: dict) -> np.ndarray:
        x = np.zeros(self.n, dtype=np.int64)
        for t, c in v.items():
            x[self.index[t]] = (x[self.index[t]] + c) % self.p
        return x

    def reduce(self, x: np.ndarray) -> np.ndarray:
        """Quotient coordinates of a vector of V."""
        x = x.copy() % self.p
        for i, c in enumerate(self.wpiv):
            if x[c]:
                x = (x - x[c] * self.W[i]) % self.p
        return x[self.free]

    def lift(self, k: int) -> dict:
        """Representative in V of the k-th quotient basis vector."""
        col = self.free[k]
        for t, c in self.index.items():
            if c == col:
                return {t: 1}
        raise KeyError(k)


class GradedModule:
    """A module over S/I described by free-module shifts and relation columns."""

    def __init__(self, nvars: int, p: int, ideal: list, shifts, relations):
        self.nvars = nvars
        self.p = p
        self.ideal = [f for f in ideal if f]
        self.shifts = list(shifts)
        self.relations = [r for r in relations if r]
        self._cache: dict = {}

    def _gens(self):
        out = []
        for r in self.relations:
            c, m = next(iter(r))
            out.append((r, sum(m) + self.shifts[c]))
        for j, s in enumerate(self.shifts):
            for g in self.ideal:
                out.append(({(j, m): x for m, x in g.items()}, _pdeg(g) + s))
        return out

    def piece(self, e: int) -> Piece:
        if e in self._cache:
            return self._cache[e]
        index = {}
        for j, s in enumerate(self.shifts):
            for m in monomials(self.nvars, e - s):
                index[(j, m)] = len(index)
        rows = []
        for v, d in self._gens():
            for q in monomials(self.nvars, e - d):
                row = np.zeros(len(index), dtype=np.int64)
                for (c, m), x in v.items():
                    t = (c, tuple(a + b for a, b in zip(m, q)))
                    row[index[t]] = (row[index[t]] + x) % self.p
                rows.append(row)
        W = np.array(rows, dtype=np.int64).reshape(len(rows), len(index))
        pc = Piece(index, W, self.p)
        self._cache[e] = pc
        return pc

    def hilbert_function(self, e: int) -> int:
        return self.piece(e).dim


def from_presented(M) -> GradedModule:
    """Convert a PresentedModule using only its raw data and the user ideal generators."""
    R = M.ring
    return GradedModule(R.nvars, R.p, [dict(f) for f in R.ideal_gens], M.shifts, M.relations)


# ---------------------------------------------------------------- maps between free-cover quotients

def map_matrix(src: GradedModule, tgt: GradedModule, columns: list, e: int) -> np.ndarray:
    """Matrix (target quotient coords x source quotient coords) of the map
    src_e -> tgt_e sending generator j of src to ``columns[j]`` (a vector over tgt's cover)."""
    S = src.piece(e)
    T = tgt.piece(e)
    p = src.p
    out = np.zeros((T.dim, S.dim), dtype=np.int64)
    for k in range(S.dim):
        ((j, m), _), = S.lift(k).items()
        img = {}
        for (c, mm), x in columns[j].items():
            t = (c, tuple(a + b for a, b in zip(mm, m)))
            img[t] = (img.get(t, 0) + x) % p
        img = {t: x for t, x in img.items() if x}
        if img:
            out[:, k] = T.reduce(T.vector(img))
    return out


# ---------------------------------------------------------------- resolutions by linear algebra

class OracleResolution:
    """A graded free resolution over R = S/I, computed degree by degree up to ``top``.

    F_0 is the given cover and d_1 the given relations (not necessarily
    minimal); later kernels get minimal generators by linear algebra.
    """

    def __init__(self, nvars, p, ideal, shifts, relations, length: int, top: int):
        self.nvars, self.p, self.ideal = nvars, p, ideal
        self.shifts = [list(shifts)]
        self.maps = []           # maps[i] = columns of d_{i+1}
        rels = [r for r in relations if r]
        deg = []
        for r in rels:
            c, m = next(iter(r))
            deg.append(sum(m) + shifts[c])
        self.shifts.append(deg)
        self.maps.append(rels)
        for _ in range(1, length):
            cols, degs = self._kernel_generators(len(self.maps), top)
            self.shifts.append(degs)
            self.maps.append(cols)

    def free(self, i: int) -> GradedModule:
        return GradedModule(self.nvars, self.p, self.ideal, self.shifts[i], [])

    def _kernel_generators(self, i: int, top: int):
        """Minimal generators (degree <= top) of ker(d_i: F_i -> F_{i-1})."""
        Fi, Fj = self.free(i), self.free(i - 1)
        cols, degs = [], []
        prev_kernel = None   # kernel basis (lifts in V) of previous degree
        lo = min(self.shifts[i], default=top + 1)
        for e in range(lo, top + 1):
            A = map_matrix(Fi, Fj, self.maps[i - 1], e) if Fj.shifts else np.zeros((0, Fi.piece(e).dim), np.int64)
            K = nullspace(A, self.p) if Fi.piece(e).dim else np.zeros((0, 0), np.int64)
            Pe = Fi.piece(e)
            # span of x_v * (kernel in degree e-1) and of the new generators so far
            span_rows = []
            if prev_kernel is not None and len(prev_kernel):
                Pp = Fi.piece(e - 1)
                for vec in prev_kernel:
                    lift = {}
                    for k, x in enumerate(vec):
                        if x:
                            (t,) = Pp.lift(k).items()
                            lift[t[0]] = x
                    for v in range(self.nvars):
                        q = tuple(int(u == v) for u in range(self.nvars))
                        w = {(c, tuple(a + b for a, b in zip(m, q))): x for (c, m), x in lift.items()}
                        span_rows.append(Pe.reduce(Pe.vector(w)))
            base_rank = rank(np.array(span_rows), self.p) if span_rows else 0
            cur = list(span_rows)
            for vec in K:
                trial = cur + [vec]
                r = rank(np.array(trial), self.p)
                if r > base_rank:
                    cur.append(vec)
                    base_rank = r
                    lift = {}
                    for k, x in enumerate(vec):
                        if x:
                            (t,) = Pe.lift(k).items()
                            lift[t[0]] = int(x)
                    cols.append(lift)
                    degs.append(e)
            prev_kernel = K
        return cols, degs

    def betti(self) -> list[int]:
        return [len(s) for s in self.shifts]


def resolution_of(M, length: int, top: int) -> OracleResolution:
    R = M.ring
    return OracleResolution(R.nvars, R.p, [dict(f) for f in R.ideal_gens], M.shifts, M.relations,
                            length, top)


# ---------------------------------------------------------------- homology dimensions

def _hom_term_space(N: GradedModule, shifts, e):
    """Hom(F, N)_e = sum_j N_{e + a_j}; returns list of (j, piece)."""
    return [(j, N.piece(e + a)) for j, a in enumerate(shifts)]


def _hom_differential(N: GradedModule, src_shifts, tgt_shifts, d_cols, e) -> np.ndarray:
    """phi -> phi o d from Hom(F_i, N)_e to Hom(F_{i+1}, N)_e."""
    p = N.p
    src = _hom_term_space(N, src_shifts, e)
    tgt = _hom_term_space(N, tgt_shifts, e)
    nrow = sum(pc.dim for _, pc in tgt)
    ncol = sum(pc.dim for _, pc in src)
    out = np.zeros((nrow, ncol), dtype=np.int64)
    col_off = np.cumsum([0] + [pc.dim for _, pc in src])
    row_off = np.cumsum([0] + [pc.dim for _, pc in tgt])
    for k, col in enumerate(d_cols):
        Pt = tgt[k][1]
        if not Pt.dim:
            continue
        for (j, m), x in col.items():
            Ps = src[j][1]
            for b in range(Ps.dim):
                (t, _), = Ps.lift(b).items()
                l, mono = t
                w = {(l, tuple(a + c for a, c in zip(mono, m))): x}
                out[row_off[k]:row_off[k + 1], col_off[j] + b] += Pt.reduce(Pt.vector(w))
    return out % p


def _tensor_differential(N: GradedModule, src_shifts, tgt_shifts, d_cols, e) -> np.ndarray:
    """d (x) 1 from (F_i (x) N)_e = sum_k N_{e - a_k} to (F_{i-1} (x) N)_e."""
    p = N.p
    src = [(k, N.piece(e - a)) for k, a in enumerate(src_shifts)]
    tgt = [(j, N.piece(e - a)) for j, a in enumerate(tgt_shifts)]
    nrow = sum(pc.dim for _, pc in tgt)
    ncol = sum(pc.dim for _, pc in src)
    out = np.zeros((nrow, ncol), dtype=np.int64)
    col_off = np.cumsum([0] + [pc.dim for _, pc in src])
    row_off = np.cumsum([0] + [pc.dim for _, pc in tgt])
    for k, col in enumerate(d_cols):
        Ps = src[k][1]
        for b in range(Ps.dim):
            (t, _), = Ps.lift(b).items()
            l, mono = t
            for (j, m), x in col.items():
                Pt = tgt[j][1]
                if not Pt.dim:
                    continue
                w = {(l, tuple(a + c for a, c in zip(mono, m))): x}
                out[row_off[j]:row_off[j + 1], col_off[k] + b] += Pt.reduce(Pt.vector(w))
    return out % p


def _dimsum(N, shifts, e, sign):
    return sum(N.piece(e + sign * a).dim for a in shifts)


def ext_dims(M, N, i: int, degrees, top: int) -> dict:
    """dim_k Ext^i(M, N)_e for each e in ``degrees`` (resolution computed up to ``top``)."""
    F = resolution_of(M, i + 2, top)
    Nm = from_presented(N)
    p = Nm.p
    out = {}
    for e in degrees:
        dim_c = _dimsum(Nm, F.shifts[i], e, +1)
        r_out = rank(_hom_differential(Nm, F.shifts[i], F.shifts[i + 1], F.maps[i], e), p)
        r_in = rank(_hom_differential(Nm, F.shifts[i - 1], F.shifts[i], F.maps[i - 1], e), p) if i >= 1 else 0
        out[e] = dim_c - r_out - r_in
    return out


def tor_dims(M, N, i: int, degrees, top: int) -> dict:
    F = resolution_of(M, i + 2, top)
    Nm = from_presented(N)
    p = Nm.p
    out = {}
    for e in degrees:
        dim_c = _dimsum(Nm, F.shifts[i], e, -1)
        r_out = rank(_tensor_differential(Nm, F.shifts[i], F.shifts[i - 1], F.maps[i - 1], e), p) if i >= 1 else 0
        r_in = rank(_tensor_differential(Nm, F.shifts[i + 1], F.shifts[i], F.maps[i], e), p)
        out[e] = dim_c - r_out - r_in
    return out


def hom_dims(M, N, degrees) -> dict:
    """dim_k Hom(M, N)_e: maps of the cover killing every relation."""
    Nm = from_presented(N)
    p = Nm.p
    rel_shifts = []
    for r in M.relations:
        c, m = next(iter(r))
        rel_shifts.append(sum(m) + M.shifts[c])
    out = {}
    for e in degrees:
        dim_c = _dimsum(Nm, M.shifts, e, +1)
        if not M.relations:
            out[e] = dim_c
            continue
        A = _hom_differential(Nm, list(M.shifts), rel_shifts, list(M.relations), e)
        out[e] = dim_c - rank(A, p)
    return out


def socle_dims(M, degrees) -> dict:
    """dim_k of {v in M_e : x_i v = 0 for all i}."""
    Mm = from_presented(M)
    p = Mm.p
    n = Mm.nvars
    out = {}
    for e in degrees:
        Pe = Mm.piece(e)
        if not Pe.dim:
            out[e] = 0
            continue
        Pn = Mm.piece(e + 1)
        blocks = []
        for v in range(n):
            q = tuple(int(u == v) for u in range(n))
            B = np.zeros((Pn.dim, Pe.dim), dtype=np.int64)
            for k in range(Pe.dim):
                (t, _), = Pe.lift(k).items()
                c, m = t
                w = {(c, tuple(a + b for a, b in zip(m, q))): 1}
                B[:, k] = Pn.reduce(Pn.vector(w))
            blocks.append(B)
        A = np.vstack(blocks)
        out[e] = Pe.dim - rank(A, p)
    return out


def hilbert_function(M, degrees) -> dict:
    Mm = from_presented(M)
    return {e: Mm.piece(e).dim for e in degrees}


def kernel_vectors(ring, cols: list, target_shifts, source_shifts, e: int) -> list[dict]:
    """Basis of the degree-e kernel of a column matrix over R, as lifted vectors."""
    ideal = [dict(f) for f in ring.ideal_gens]
    src = GradedModule(ring.nvars, ring.p, ideal, source_shifts, [])
    tgt = GradedModule(ring.nvars, ring.p, ideal, target_shifts, [])
    A = map_matrix(src, tgt, cols, e)
    Pe = src.piece(e)
    out = []
    for vec in nullspace(A, ring.p) if Pe.dim else []:
        lift = {}
        for k, x in enumerate(vec):
            if x:
                (t, _), = Pe.lift(k).items()
                lift[t] = int(x)
        out.append(lift)
    return out


def residue_betti(ring, length: int) -> list[int]:
    """Total Betti numbers of k by iterated linear-algebra syzygies (generators in degrees <= length)."""
    rels = [{(0, tuple(int(u == v) for u in range(ring.nvars))): 1} for v in range(ring.nvars)]
    F = OracleResolution(ring.nvars, ring.p, [dict(f) for f in ring.ideal_gens], [0], rels,
                         length, length + 1)
    return F.betti()[:length + 1]
