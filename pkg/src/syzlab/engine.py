"""Degree-by-degree Groebner basis engine for graded submodules of S^r.

Elements are raw module vectors: dicts mapping a term ``(comp, mono)`` to a
coefficient in ``range(1, p)``.  The module order is position over term: a
smaller component index is larger, and inside a component monomials compare
by degrevlex.  Every generator must be homogeneous with respect to the
component shifts.

The engine works one degree at a time.  All S-pairs and pending generators of
degree ``d`` are assembled, symbolically preprocessed (a reducer row is added
for each monomial divisible by a known lead term) and handed to the sparse
echelon kernel as one matrix.  Because the input is homogeneous, the basis is
complete up to degree ``d`` once that step returns.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

import numpy as np

from syzlab.echelon import echelonize
from syzlab.poly import mono_div, mono_divides, mono_lcm

Term = tuple  # (comp, mono)


def term_key(t: Term):
    m = t[1]
    return (t[0], -sum(m), m[::-1])


def vec_degree(v: dict, shifts: Sequence[int]) -> int:
    c, m = next(iter(v))
    return sum(m) + shifts[c]


def vec_lead(v: dict) -> Term:
    return min(v, key=term_key)


def vec_is_homogeneous(v: dict, shifts: Sequence[int]) -> bool:
    return len({sum(m) + shifts[c] for c, m in v}) <= 1


def vec_add(u: dict, v: dict, p: int) -> dict:
    w = dict(u)
    for t, c in v.items():
        x = (w.get(t, 0) + c) % p
        if x:
            w[t] = x
        else:
            w.pop(t, None)
    return w


def vec_scale(v: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {t: (x * c) % p for t, x in v.items()}


def vec_mul_poly(v: dict, f: dict, p: int) -> dict:
    """Multiply a module vector by a raw polynomial."""
    w: dict = {}
    for (c, m), x in v.items():
        for fm, fc in f.items():
            t = (c, tuple(a + b for a, b in zip(m, fm)))
            y = (w.get(t, 0) + x * fc) % p
            if y:
                w[t] = y
            else:
                w.pop(t, None)
    return w


def vec_from_poly(f: dict, comp: int) -> dict:
    return {(comp, m): c for m, c in f.items()}


def vec_component(v: dict, comp: int) -> dict:
    return {m: x for (c, m), x in v.items() if c == comp}


def _mul_terms(terms: list, q: tuple) -> list:
    return [((c, tuple(a + b for a, b in zip(m, q))), x) for (c, m), x in terms]


class SubmoduleGB:
    """Incremental, degree-truncated Groebner basis of a graded submodule.

    ``lifts`` is a reduced Groebner basis of the ring ideal I; when given, the
    elements ``g * e_c`` are seeded for every component so that the engine
    computes with the submodule of (S/I)^r lifted to S^r.
    """

    def __init__(self, nvars: int, shifts: Sequence[int], p: int,
                 lifts: Sequence[dict] = ()):
        self.nvars = nvars
        self.shifts = list(shifts)
        self.p = p
        self.rank = len(self.shifts)
        self.ideal_mode = self.rank == 1
        self.elems: list[list] = []
        self.leads: list[Term] = []
        self.degs: list[int] = []
        self.is_lift: list[bool] = []
        self.by_comp: list[list] = [[] for _ in range(self.rank)]
        self.pending: dict[int, list] = defaultdict(list)
        self.pairs: list[list] = [[] for _ in range(self.rank)]
        self.done_through = None
        for c in range(self.rank):
            for g in lifts:
                terms = sorted(((c, m), x) for m, x in g.items())
                terms.sort(key=lambda t: term_key(t[0]))
                self._insert(terms, lift=True)

    # ------------------------------------------------------------ bookkeeping

    def _insert(self, terms: list, lift: bool = False) -> int:
        k = len(self.elems)
        lead = terms[0][0]
        self.elems.append(terms)
        self.leads.append(lead)
        self.degs.append(sum(lead[1]) + self.shifts[lead[0]])
        self.is_lift.append(lift)
        if not lift:
            self._update_pairs(k)
        self.by_comp[lead[0]].append((lead[1], k))
        return k

    def _update_pairs(self, k: int) -> None:
        c, m = self.leads[k]
        shift = self.shifts[c]
        leads = self.leads
        kept_old = []
        for pr in self.pairs[c]:
            _, i, j, L = pr
            if mono_divides(m, L) and L != mono_lcm(leads[i][1], m) \
                    and L != mono_lcm(leads[j][1], m):
                continue
            kept_old.append(pr)
        self.pairs[c] = kept_old

        by_L: dict = {}
        for mi, i in self.by_comp[c]:
            by_L.setdefault(mono_lcm(mi, m), []).append(i)
        kept: list = []
        for L in sorted(by_L, key=sum):
            if any(mono_divides(L2, L) for L2 in kept):
                continue
            kept.append(L)
        for L in kept:
            idxs = by_L[L]
            if self.ideal_mode and any(
                    all(a + b == l for a, b, l in zip(leads[i][1], m, L)) for i in idxs):
                continue
            self.pairs[c].append((sum(L) + shift, min(idxs), k, L))

    def add(self, vecs: Iterable[dict]) -> None:
        """Queue homogeneous generators (zero vectors are ignored)."""
        for v in vecs:
            if not v:
                continue
            self.pending[vec_degree(v, self.shifts)].append(v)

    def _next_degree(self):
        ds = [d for d, lst in self.pending.items() if lst]
        for plist in self.pairs:
            if plist:
                ds.append(min(pr[0] for pr in plist))
        return min(ds) if ds else None

    def _find_reducer(self, t: Term):
        c, m = t
        for lm, k in self.by_comp[c]:
            if mono_divides(lm, m):
                return k, lm
        return None

    # ------------------------------------------------------------ one degree

    def _step(self, d: int, cands: Sequence[dict] = ()) -> list[bool]:
        pair_rows: list = []
        seen = set()
        for c in range(self.rank):
            plist = self.pairs[c]
            if not plist:
                continue
            now = [pr for pr in plist if pr[0] == d]
            if not now:
                continue
            self.pairs[c] = [pr for pr in plist if pr[0] != d]
            for _, i, j, L in now:
                for k in (i, j):
                    if (k, L) in seen:
                        continue
                    seen.add((k, L))
                    pair_rows.append(_mul_terms(self.elems[k], mono_div(L, self.leads[k][1])))
        gens = self.pending.pop(d, [])
        gen_rows = [sorted(v.items(), key=lambda t: term_key(t[0])) for v in gens]
        cand_rows = [sorted(v.items(), key=lambda t: term_key(t[0])) for v in cands]
        if not (pair_rows or gen_rows or cand_rows):
            return []

        by_lead: dict = defaultdict(list)
        for idx, row in enumerate(pair_rows):
            by_lead[row[0][0]].append(idx)
        taken = set()
        reducers: list = []
        processed = set()
        todo = []
        for row in pair_rows + gen_rows + cand_rows:
            for t, _ in row:
                if t not in processed:
                    processed.add(t)
                    todo.append(t)
        while todo:
            t = todo.pop()
            lst = by_lead.get(t)
            if lst:
                idx = lst.pop()
                taken.add(idx)
                reducers.append(pair_rows[idx])
                continue
            hit = self._find_reducer(t)
            if hit is None:
                continue
            k, lm = hit
            row = _mul_terms(self.elems[k], mono_div(t[1], lm))
            reducers.append(row)
            for u, _ in row:
                if u not in processed:
                    processed.add(u)
                    todo.append(u)
        rest = [row for idx, row in enumerate(pair_rows) if idx not in taken]

        cols = sorted(processed, key=term_key)
        col_of = {t: i for i, t in enumerate(cols)}
        reducers.sort(key=lambda row: col_of[row[0][0]])
        all_rows = reducers + rest + gen_rows + cand_rows
        indptr = np.zeros(len(all_rows) + 1, dtype=np.int64)
        for r, row in enumerate(all_rows):
            indptr[r + 1] = indptr[r] + len(row)
        nnz = int(indptr[-1])
        indices = np.empty(nnz, dtype=np.int64)
        data = np.empty(nnz, dtype=np.int64)
        pos = 0
        for row in all_rows:
            for t, x in row:
                indices[pos] = col_of[t]
                data[pos] = x
                pos += 1
        nfix = len(reducers)
        out_ptr, out_idx, out_dat, flags = echelonize(
            indptr, indices, data, len(cols), self.p, nfix, nfix)

        out_ptr = out_ptr.tolist()
        out_idx = out_idx.tolist()
        out_dat = out_dat.tolist()
        for r in range(len(all_rows) - nfix):
            if not flags[r]:
                continue
            a, b = out_ptr[r], out_ptr[r + 1]
            terms = [(cols[out_idx[s]], out_dat[s]) for s in range(a, b)]
            self._insert(terms)
        ncand = len(cand_rows)
        start = len(all_rows) - nfix - ncand
        return [bool(flags[start + i]) for i in range(ncand)]

    # ------------------------------------------------------------ drivers

    def run(self, upto: int | None = None) -> "SubmoduleGB":
        """Process every degree up to ``upto`` (everything when None)."""
        while True:
            d = self._next_degree()
            if d is None or (upto is not None and d > upto):
                break
            self._step(d)
        if upto is not None:
            self.done_through = upto if self.done_through is None else max(self.done_through, upto)
        return self

    def is_complete(self) -> bool:
        return self._next_degree() is None

    def minimal_subset(self, cands: Sequence[dict]) -> list[bool]:
        """Flag the candidates that are minimal generators modulo everything
        already queued or present, scanning candidates by degree."""
        flags = [False] * len(cands)
        order: dict[int, list] = defaultdict(list)
        for i, v in enumerate(cands):
            if v:
                order[vec_degree(v, self.shifts)].append(i)
        while order:
            d = self._next_degree()
            dc = min(order)
            if d is None or d > dc:
                d = dc
            idxs = order.pop(d, [])
            res = self._step(d, [cands[i] for i in idxs])
            for i, f in zip(idxs, res):
                flags[i] = f
        return flags

    # ------------------------------------------------------------ queries

    def basis(self) -> list[dict]:
        return [dict(t) for t in self.elems]

    def lead_monomials(self) -> list[list]:
        """Minimal lead monomials per component."""
        out = []
        for c in range(self.rank):
            ms = [m for m, _ in self.by_comp[c]]
            out.append(ms)
        return out

    def reduce(self, v: dict) -> dict:
        """Full normal form of ``v`` (valid up to the processed degree)."""
        f = dict(v)
        rem: dict = {}
        p = self.p
        while f:
            t = min(f, key=term_key)
            x = f[t]
            hit = self._find_reducer(t)
            if hit is None:
                rem[t] = x
                del f[t]
                continue
            k, lm = hit
            q = mono_div(t[1], lm)
            for (c, m), y in self.elems[k]:
                u = (c, tuple(a + b for a, b in zip(m, q)))
                z = (f.get(u, 0) - x * y) % p
                if z:
                    f[u] = z
                else:
                    f.pop(u, None)
        return rem

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)
