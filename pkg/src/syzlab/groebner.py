"""Groebner bases, normal forms and syzygies over a quotient ring S/I.

Computations over R = S/I are lifted to S by adjoining ``I * e_c`` for every
free basis element, so one engine serves both levels.  Syzygies are read off
by elimination: the generators ``(f_j, e_j)`` of ``S^r + S^m`` are run under a
position-over-term order in which the target components dominate, and the
basis elements that live entirely in the source components generate the
kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from syzlab.engine import SubmoduleGB, term_key, vec_degree, vec_lead
from syzlab.poly import desc_key, mono_divides, plead, pnormal_form
from syzlab.rings import GradedFreeModule, GradedRing, PresentedModule, RingError


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced Groebner basis of a graded submodule of a free module over S."""

    ring: GradedRing
    shifts: tuple
    elements: tuple
    engine: SubmoduleGB

    def reduce(self, v: dict) -> dict:
        return reduce(v, self)

    def lead_terms(self) -> list:
        return [vec_lead(v) for v in self.elements]

    def __len__(self):
        return len(self.elements)


def _as_vecs(gens, shifts):
    """Accept raw polynomials (ideal case) or raw module vectors."""
    out = []
    for g in gens:
        if not g:
            continue
        k = next(iter(g))
        if isinstance(k, tuple) and len(k) == 2 and isinstance(k[0], int) and isinstance(k[1], tuple):
            out.append(dict(g))
        else:
            out.append({(0, m): x for m, x in g.items()})
    return out


def _reduced(eng: SubmoduleGB) -> list[dict]:
    elems = eng.basis()
    leads = [vec_lead(v) for v in elems]
    keep = []
    for i, (v, (c, m)) in enumerate(zip(elems, leads)):
        redundant = False
        for j, (c2, m2) in enumerate(leads):
            if j != i and c2 == c and mono_divides(m2, m) and (m2 != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    out = []
    p = eng.p
    for i in keep:
        v, lt = elems[i], leads[i]
        inv = pow(v[lt], p - 2, p)
        tail = {t: (x * inv) % p for t, x in v.items() if t != lt}
        w = eng.reduce(tail)
        w[lt] = 1
        out.append(w)
    out.sort(key=lambda w: term_key(vec_lead(w)))
    return out


def buchberger(gens: Sequence[dict], ring: GradedRing, shifts: Sequence[int] | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of (S/I)^r generated by ``gens``,
    lifted to S^r (so it contains ``I * e_c`` for every component c).

    With ``shifts`` omitted the generators are polynomials and the result is
    the basis of the ideal ``(gens) + I`` of S.
    """
    shifts = (0,) if shifts is None else tuple(shifts)
    vecs = _as_vecs(gens, shifts)
    for v in vecs:
        if any(c >= len(shifts) for c, _ in v):
            raise RingError("generator has a component outside the free module")
        if len({sum(m) + shifts[c] for c, m in v}) > 1:
            raise RingError("generator is not homogeneous")
    eng = SubmoduleGB(ring.nvars, shifts, ring.p, lifts=ring.gb)
    eng.add(vecs)
    eng.run()
    return GroebnerBasis(ring, shifts, tuple(_reduced(eng)), eng)


def reduce(v: dict, G: GroebnerBasis) -> dict:
    """Unique normal form of ``v`` with respect to ``G``; zero iff v is in the span."""
    if not v:
        return {}
    vec = _as_vecs([v], G.shifts)[0]
    for c, m in vec:
        if c >= len(G.shifts):
            raise RingError(f"vector has component {c}, free module has rank {len(G.shifts)}")
        if len(m) != G.ring.nvars:
            raise RingError("vector lives in a different number of variables")
    return G.engine.reduce(vec)


def reduce_poly(f: dict, G: GroebnerBasis) -> dict:
    return {m: x for (_, m), x in reduce({(0, m): x for m, x in f.items()}, G).items()}


def membership_engine(gens: Sequence[dict], ring: GradedRing, shifts: Sequence[int]) -> SubmoduleGB:
    eng = SubmoduleGB(ring.nvars, shifts, ring.p, lifts=ring.gb)
    eng.add(gens)
    eng.run()
    return eng


def minimal_generators(vecs: Sequence[dict], shifts: Sequence[int], ring: GradedRing,
                       base: Sequence[dict] = ()) -> list[int]:
    """Indices of a minimal generating subset of ``vecs`` modulo ``base`` + I."""
    eng = SubmoduleGB(ring.nvars, shifts, ring.p, lifts=ring.gb)
    eng.add(base)
    flags = eng.minimal_subset([ring.nf_vec(v) for v in vecs])
    return [i for i, f in enumerate(flags) if f]


def syzygy_generators(cols: Sequence[dict], target_shifts: Sequence[int], ring: GradedRing,
                      source_shifts: Sequence[int] | None = None) -> tuple[list[dict], list[int]]:
    """Generators (not necessarily minimal) of the kernel over R of the map
    ``R^m -> R^r`` whose j-th column is ``cols[j]``."""
    r = len(target_shifts)
    m = len(cols)
    if source_shifts is None:
        source_shifts = []
        for col in cols:
            if not col:
                raise RingError("zero column needs an explicit source degree")
            source_shifts.append(vec_degree(col, target_shifts))
    source_shifts = list(source_shifts)
    if m == 0:
        return [], source_shifts
    zero = (0,) * ring.nvars
    shifts = list(target_shifts) + source_shifts
    eng = SubmoduleGB(ring.nvars, shifts, ring.p, lifts=ring.gb)
    gens = []
    for j, col in enumerate(cols):
        v = dict(ring.nf_vec(col))
        v[(r + j, zero)] = 1
        gens.append(v)
    eng.add(gens)
    eng.run()
    out = []
    for k, terms in enumerate(eng.elems):
        if eng.is_lift[k] or terms[0][0][0] < r:
            continue
        out.append({(c - r, mm): x for (c, mm), x in terms})
    return out, source_shifts


def syzygies(cols: Sequence[dict], target_shifts: Sequence[int], ring: GradedRing,
             source_shifts: Sequence[int] | None = None) -> tuple[list[dict], list[int]]:
    """Minimal homogeneous generators of the kernel of the column matrix over R.

    Returns the kernel columns (vectors over the source) and the source shifts.
    """
    gens, source_shifts = syzygy_generators(cols, target_shifts, ring, source_shifts)
    keep = minimal_generators(gens, source_shifts, ring)
    out = [ring.nf_vec(gens[i]) for i in keep]
    out.sort(key=lambda v: (vec_degree(v, source_shifts), term_key(vec_lead(v))))
    return out, source_shifts


def image_module(cols: Sequence[dict], target_shifts: Sequence[int], ring: GradedRing) -> PresentedModule:
    """The submodule of a graded free module generated by ``cols``, presented
    by its syzygies (generators sit in the degrees of the columns)."""
    cols = [ring.nf_vec(c) for c in cols]
    cols = [c for c in cols if c]
    rels, sshifts = syzygies(cols, target_shifts, ring)
    return PresentedModule(ring, GradedFreeModule(tuple(sshifts)), tuple(rels))


def ideal_module(polys: Sequence[dict | str], ring: GradedRing) -> PresentedModule:
    """An ideal J of R regarded as a graded R-module."""
    polys = [ring.poly(f) if isinstance(f, str) else f for f in polys]
    return image_module([{(0, m): x for m, x in f.items()} for f in polys], [0], ring)


def ideal_basis(polys: Sequence[dict], ring: GradedRing) -> list[dict]:
    """Reduced basis of ``(polys) + I`` in S with the elements of I removed."""
    G = buchberger(polys, ring)
    out = []
    for v in G.elements:
        f = {m: x for (_, m), x in v.items()}
        if ring.nf(f):
            out.append(f)
    out.sort(key=lambda f: desc_key(plead(f)))
    return out


def ideal_colon(I: Sequence[dict], J: Sequence[dict], ring: GradedRing) -> list[dict]:
    """(I : J) = {f in R : f J in I}, as a reduced basis (see :func:`ideal_basis`)."""
    J = [ring.nf(f) for f in J if ring.nf(f)]
    I = [ring.nf(f) for f in I if ring.nf(f)]
    if not J:
        return [ring.one()]
    tshifts = [-sum(plead(j)) for j in J]
    cols = [{(t, m): x for t, j in enumerate(J) for m, x in j.items()}]
    sshifts = [0]
    for t in range(len(J)):
        for f in I:
            cols.append({(t, m): x for m, x in f.items()})
            sshifts.append(sum(plead(f)) + tshifts[t])
    gens, _ = syzygy_generators(cols, tshifts, ring, sshifts)
    first = [{m: x for (c, m), x in v.items() if c == 0} for v in gens]
    first = [f for f in first if f]
    if not first:
        return []
    return ideal_basis(first, ring)


def module_annihilator(M) -> list[dict]:
    """ann_R(M) for a presented module, as a reduced basis (I removed)."""
    ring = M.ring
    g = M.rank
    if g == 0:
        return [ring.one()]
    zero = (0,) * ring.nvars
    tshifts = []
    for c in range(g):
        tshifts.extend(s - M.shifts[c] for s in M.shifts)
    cols = [{(c * g + c, zero): 1 for c in range(g)}]
    sshifts = [0]
    for c in range(g):
        for rel in M.relations:
            cols.append({(c * g + cc, m): x for (cc, m), x in rel.items()})
            sshifts.append(vec_degree(rel, M.shifts) - M.shifts[c])
    gens, _ = syzygy_generators(cols, tshifts, ring, sshifts)
    first = [{m: x for (c, m), x in v.items() if c == 0} for v in gens]
    first = [f for f in first if f]
    if not first:
        return []
    return ideal_basis(first, ring)


def poly_in_ideal(f: dict, basis: Sequence[dict], ring: GradedRing) -> bool:
    """Membership of f in (basis) + I."""
    gb = buchberger(basis, ring)
    return not reduce_poly(f, gb)


def nf_mod_ideal(f: dict, basis: Sequence[dict], p: int) -> dict:
    return pnormal_form(f, basis, p)
