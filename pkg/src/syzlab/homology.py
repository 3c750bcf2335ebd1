"""Hom, duals, socles, Ext and Tor of finitely presented graded modules.

Ext and Tor are computed as homology of ``Hom(F, N)`` and ``F (x) N`` where F
is the minimal free resolution of the first argument and N is kept as a
cokernel ``P / Rel``.  Every term of those complexes is then a quotient of a
graded free module P by the span of ``Rel`` and some image, and the Hilbert
series of the homology is assembled from Hilbert series of such quotients
only:

    HS(H) = Q_i(im_in + Rel_i) - Q_j(Rel_j) + Q_j(im_out + Rel_j)

where ``Q(U) = HS(P / (U + I P))``, ``im_in`` is the image of the incoming
differential and ``im_out`` the image of the outgoing one in the next term.
Vanishing is exact: H = 0 iff the numerator is zero.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from syzlab.engine import vec_degree, vec_mul_poly
from syzlab.groebner import membership_engine, minimal_generators, syzygy_generators
from syzlab.invariants import HilbertData, _padd, hilbert_numerator
from syzlab.resolve import minimal_free_resolution, minimal_presentation, minimal_presentation_data
from syzlab.rings import GradedFreeModule, PresentedModule, RingError, free_module


def degree_cap(default: int) -> int:
    env = os.environ.get("SYZLAB_DEGREE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise RingError(f"SYZLAB_DEGREE_CAP must be an integer, got {env!r}") from None
    return default


def _quotient_numerator(ring, shifts, gens) -> dict:
    if not shifts:
        return {}
    return hilbert_numerator(PresentedModule(ring, GradedFreeModule(tuple(shifts)), ()), gens)


def _homology_numerator(ring, shifts_i, im_in, rel_i, shifts_j, rel_j, im_out) -> dict:
    num = _quotient_numerator(ring, shifts_i, list(im_in) + list(rel_i))
    if shifts_j:
        num = _padd(num, _quotient_numerator(ring, shifts_j, rel_j), -1)
        num = _padd(num, _quotient_numerator(ring, shifts_j, list(im_out) + list(rel_j)))
    return num


def _same_ring(M, N):
    if M.ring != N.ring:
        raise RingError("modules live over different rings")


# ---------------------------------------------------------------- Hom complex pieces

def _hom_term(a, b):
    """Shifts of Hom(F, P) for F with shifts a and P with shifts b; index j*len(b)+l."""
    return [bl - aj for aj in a for bl in b]


def _hom_rel(na, nrel_cols, g):
    out = []
    for j in range(na):
        for rel in nrel_cols:
            out.append({(j * g + l, m): x for (l, m), x in rel.items()})
    return out


def _hom_image(d_next, na, nb, g, p):
    """Images of the basis E_(j,l) of Hom(F_i, P) under precomposition with d_{i+1}.

    ``d_next`` are the columns of d_{i+1}: F_{i+1} -> F_i (nb of them)."""
    rows: list[dict] = [dict() for _ in range(na)]  # rows[j] = {k: poly d[j,k]}
    for k, col in enumerate(d_next):
        for (j, m), x in col.items():
            rows[j].setdefault(k, {})[m] = x
    out = []
    for j in range(na):
        for l in range(g):
            v = {}
            for k, f in rows[j].items():
                for m, x in f.items():
                    v[(k * g + l, m)] = x
            out.append(v)
    return out


def _tensor_term(a, b):
    return [aj + bl for aj in a for bl in b]


def _tensor_image(d, g):
    """Images of E_(k,l) of F_i (x) P under d_i (x) 1 into F_{i-1} (x) P."""
    out = []
    for col in d:
        for l in range(g):
            out.append({(j * g + l, m): x for (j, m), x in col.items()})
    return out


# ---------------------------------------------------------------- reports

@dataclass
class ExtTorReport:
    kind: str
    i_lo: int
    i_hi: int
    dims: list                      # int, or None when infinite
    hilbert: list                   # HilbertData per index
    degree_tables: list             # {degree: dim} per index, up to the cap
    cap: int
    extra: dict = field(default_factory=dict)

    @property
    def indices(self) -> list[int]:
        return list(range(self.i_lo, self.i_hi + 1))

    @property
    def vanishing(self) -> list[bool]:
        return [d == 0 for d in self.dims]

    def dim(self, i: int):
        return self.dims[i - self.i_lo]

    def runs(self) -> list[tuple[int, int, bool]]:
        """Run-length summary: (first index, last index, vanishing)."""
        out = []
        for i, v in zip(self.indices, self.vanishing):
            if out and out[-1][2] == v:
                out[-1] = (out[-1][0], i, v)
            else:
                out.append((i, i, v))
        return out

    def longest_zero_run(self, start: int | None = None) -> tuple[int, int | None]:
        """Length and first index of the longest vanishing run (indices >= start)."""
        best, where = 0, None
        for a, b, v in self.runs():
            if not v:
                continue
            if start is not None:
                a = max(a, start)
                if a > b:
                    continue
            if b - a + 1 > best:
                best, where = b - a + 1, a
        return best, where

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "range": [self.i_lo, self.i_hi],
            "dims": [("inf" if d is None else d) for d in self.dims],
            "vanishing": self.vanishing,
            "degreeCap": self.cap,
            "hilbert": {
                str(i): {"numerator": list(h.numerator), "offset": h.offset, "dim": h.dim}
                for i, h in zip(self.indices, self.hilbert)
            },
            "graded": {str(i): {str(d): v for d, v in sorted(t.items())}
                       for i, t in zip(self.indices, self.degree_tables)},
            "runs": [{"from": a, "to": b, "vanishing": v} for a, b, v in self.runs()],
            "longestZeroRun": self.longest_zero_run()[0],
        }


def _finish(kind, i_lo, i_hi, nums, lows, cap, nvars):
    dims, hs, tables = [], [], []
    for num, lo in zip(nums, lows):
        h = HilbertData.from_raw(num, nvars)
        hs.append(h)
        dims.append(h.total_length())
        if h.dim < 0:
            tables.append({})
        else:
            start = min(lo, h.offset)
            tables.append({d: h.value(d) for d in range(start, cap + 1) if h.value(d)})
    return ExtTorReport(kind, i_lo, i_hi, dims, hs, tables, cap)


def _check_range(i_lo, i_hi):
    if i_lo < 0 or i_hi < i_lo:
        raise RingError(f"invalid index range {i_lo}..{i_hi}")


def _resolution_for(M, n, resolution):
    if resolution is None:
        return minimal_free_resolution(M, n)
    if resolution.length < n and not resolution.complete:
        raise RingError(f"index range needs F_{n}, the resolution only reaches F_{resolution.length}")
    return resolution


def _F(F, i):
    return F.shifts[i] if i < len(F.shifts) else ()


def _d(F, i):
    """Columns of d_i (empty when outside the computed range)."""
    return F.maps[i - 1] if 1 <= i <= len(F.maps) else ()


def ext(M: PresentedModule, N: PresentedModule, i_lo: int, i_hi: int, resolution=None) -> ExtTorReport:
    """Ext^i_R(M, N) for i_lo <= i <= i_hi."""
    _same_ring(M, N)
    _check_range(i_lo, i_hi)
    ring = M.ring
    F = _resolution_for(M, i_hi + 1, resolution)
    Np = minimal_presentation(N)
    b, g = list(Np.shifts), Np.rank
    nums, lows = [], []
    for i in range(i_lo, i_hi + 1):
        a_i, a_next = _F(F, i), _F(F, i + 1)
        P_i = _hom_term(a_i, b)
        P_j = _hom_term(a_next, b)
        rel_i = _hom_rel(len(a_i), Np.relations, g)
        rel_j = _hom_rel(len(a_next), Np.relations, g)
        im_in = _hom_image(_d(F, i), len(_F(F, i - 1)), len(a_i), g, ring.p) if i >= 1 else []
        im_out = _hom_image(_d(F, i + 1), len(a_i), len(a_next), g, ring.p)
        nums.append(_homology_numerator(ring, P_i, im_in, rel_i, P_j, rel_j, im_out))
        lows.append(min(P_i, default=0))
    cap = degree_cap(max(_F(F, i_hi), default=0) + 4)
    return _finish("ext", i_lo, i_hi, nums, lows, cap, ring.nvars)


def tor(M: PresentedModule, N: PresentedModule, i_lo: int, i_hi: int, resolution=None) -> ExtTorReport:
    """Tor_i^R(M, N) for i_lo <= i <= i_hi."""
    _same_ring(M, N)
    _check_range(i_lo, i_hi)
    ring = M.ring
    F = _resolution_for(M, i_hi + 1, resolution)
    Np = minimal_presentation(N)
    b, g = list(Np.shifts), Np.rank
    nums, lows = [], []
    for i in range(i_lo, i_hi + 1):
        a_i = _F(F, i)
        P_i = _tensor_term(a_i, b)
        rel_i = _hom_rel(len(a_i), Np.relations, g)
        im_in = _tensor_image(_d(F, i + 1), g)
        if i >= 1:
            a_prev = _F(F, i - 1)
            P_j = _tensor_term(a_prev, b)
            rel_j = _hom_rel(len(a_prev), Np.relations, g)
            im_out = _tensor_image(_d(F, i), g)
        else:
            P_j, rel_j, im_out = [], [], []
        nums.append(_homology_numerator(ring, P_i, im_in, rel_i, P_j, rel_j, im_out))
        lows.append(min(P_i, default=0))
    cap = degree_cap(max(_F(F, i_hi), default=0) + max(b, default=0) + 4)
    return _finish("tor", i_lo, i_hi, nums, lows, cap, ring.nvars)


# ---------------------------------------------------------------- Hom as a module

def subquotient(ring, shifts, gens, rels):
    """Presentation of (span(gens) + span(rels)) / span(rels) inside a free module.

    Returns (module, generator vectors) with the module minimally presented and
    its generators a subset of ``gens``.
    """
    keep = minimal_generators(gens, shifts, ring, base=rels)
    gens = [gens[i] for i in keep]
    if not gens:
        return PresentedModule(ring, GradedFreeModule(()), ()), []
    s = len(gens)
    src = [vec_degree(v, shifts) for v in gens]
    cols = list(gens) + list(rels)
    srcs = src + [vec_degree(v, shifts) for v in rels]
    syz, _ = syzygy_generators(cols, list(shifts), ring, srcs)
    relcols = []
    for v in syz:
        w = {t: x for t, x in v.items() if t[0] < s}
        if w:
            relcols.append(w)
    Q = PresentedModule(ring, GradedFreeModule(tuple(src)), tuple(relcols))
    P, _, kept = minimal_presentation_data(Q)
    return P, [gens[i] for i in kept]


@dataclass(eq=False)
class HomModule:
    """Hom(M, N) with generators stored as matrices cover(M) -> cover(N).

    ``generators[t]`` is a vector indexed ``j * rank(N) + l``: the coefficient
    of generator l of N in the image of generator j of M.
    """

    module: PresentedModule
    generators: list
    source: PresentedModule        # minimal presentation of M
    target: PresentedModule        # minimal presentation of N
    ambient_shifts: list           # shifts of Hom(cover M, cover N)
    relations: list                # Rel_0 inside the ambient

    def matrix(self, t: int) -> dict:
        """{(j, l): poly} for generator t."""
        g = self.target.rank
        out: dict = {}
        for (c, m), x in self.generators[t].items():
            out.setdefault((c // g, c % g), {})[m] = x
        return out


def _hom_cycles(Mp, Np):
    ring = Mp.ring
    a, b, g = list(Mp.shifts), list(Np.shifts), Np.rank
    P0 = _hom_term(a, b)
    rel0 = _hom_rel(len(a), Np.relations, g)
    d1 = list(Mp.relations)
    r1 = [vec_degree(c, a) for c in d1]
    P1 = _hom_term(r1, b)
    rel1 = _hom_rel(len(r1), Np.relations, g)
    images = _hom_image(d1, len(a), len(r1), g, ring.p)
    zero = (0,) * ring.nvars
    nP0 = len(P0)
    if not P1:
        cyc = [{(c, zero): 1} for c in range(nP0)]
        return P0, rel0, cyc
    cols = images + rel1
    srcs = list(P0) + [vec_degree(v, P1) for v in rel1]
    syz, _ = syzygy_generators(cols, P1, ring, srcs)
    cyc = []
    for v in syz:
        w = {t: x for t, x in v.items() if t[0] < nP0}
        if w:
            cyc.append(ring.nf_vec(w))
    return P0, rel0, cyc


def hom_module(M: PresentedModule, N: PresentedModule) -> HomModule:
    """Hom_R(M, N) as the kernel of Hom(F_0, N) -> Hom(F_1, N)."""
    _same_ring(M, N)
    ring = M.ring
    Mp = minimal_presentation(M)
    Np = minimal_presentation(N)
    if Mp.rank == 0 or Np.rank == 0:
        return HomModule(PresentedModule(ring, GradedFreeModule(()), ()), [], Mp, Np, [], [])
    P0, rel0, cyc = _hom_cycles(Mp, Np)
    H, gens = subquotient(ring, P0, cyc, rel0)
    return HomModule(H, gens, Mp, Np, P0, rel0)


def identity_vector(Mp: PresentedModule) -> dict:
    zero = (0,) * Mp.ring.nvars
    g = Mp.rank
    return {(j * g + j, zero): 1 for j in range(g)}


def apply_hom(matrix_vec: dict, v: dict, g: int, p: int) -> dict:
    """Apply a map given as a Hom vector (index j*g + l) to a vector over cover(M)."""
    out: dict = {}
    rows: dict = {}
    for (c, m), x in matrix_vec.items():
        rows.setdefault(c // g, {}).setdefault(c % g, {})[m] = x
    for (j, m), x in v.items():
        for l, f in rows.get(j, {}).items():
            for fm, fx in f.items():
                t = (l, tuple(a + b for a, b in zip(m, fm)))
                y = (out.get(t, 0) + x * fx) % p
                if y:
                    out[t] = y
                else:
                    out.pop(t, None)
    return out


# ---------------------------------------------------------------- duals

@dataclass(eq=False)
class Biduality:
    dual: HomModule
    bidual: HomModule
    injective: bool
    surjective: bool
    hilbert_equal: bool

    @property
    def iso(self) -> bool:
        return self.injective and self.surjective


def dual_and_biduality(M: PresentedModule) -> tuple[PresentedModule, bool, Biduality]:
    """M* = Hom(M, R) and whether the natural map M -> M** is an isomorphism."""
    from syzlab.invariants import hilbert

    ring = M.ring
    R = free_module(ring, 1)
    D = hom_module(M, R)
    Mp = D.source
    Ms = D.module
    DD = hom_module(Ms, R)
    s = len(D.generators)
    # column j of Phi: values of the dual generators on generator j of M
    phi_cols = []
    for j in range(Mp.rank):
        col = {}
        for t in range(s):
            f = {m: x for (c, m), x in D.generators[t].items() if c == j}
            for m, x in f.items():
                col[(t, m)] = x
        phi_cols.append(col)
    src = list(Mp.shifts)
    dshifts = [-d for d in Ms.shifts]  # Hom(cover(M*), R) shifts
    if s:
        # kernel of Phi must lie in the relations of M
        syz, _ = syzygy_generators(phi_cols, dshifts, ring, src)
        eng = membership_engine(list(Mp.relations), ring, src)
        injective = all(eng.contains(ring.nf_vec(v)) for v in syz)
        eng2 = membership_engine([c for c in phi_cols if c], ring, dshifts)
        surjective = all(eng2.contains(ring.nf_vec(v)) for v in DD.generators)
    else:
        injective = Mp.rank == 0 or hilbert(Mp).dim < 0
        surjective = True
    hs_equal = hilbert(Mp) == hilbert(DD.module) if DD.module.rank or Mp.rank else True
    info = Biduality(D, DD, injective, surjective, hs_equal)
    return Ms, info.iso and hs_equal, info


def dual(M: PresentedModule) -> PresentedModule:
    return hom_module(M, free_module(M.ring, 1)).module


# ---------------------------------------------------------------- socle

@dataclass
class SocleReport:
    dim: int
    generators: list               # vectors over the minimal cover of M
    degrees: dict                  # degree -> dimension
    module: PresentedModule        # minimal presentation the generators refer to

    def to_json(self, ring) -> dict:
        return {
            "dim": self.dim,
            "degrees": {str(d): v for d, v in sorted(self.degrees.items())},
            "generators": [
                [ring.fmt({m: x for (c, m), x in v.items() if c == l}) for l in range(self.module.rank)]
                for v in self.generators
            ],
        }


def socle(M) -> SocleReport:
    """(0 :_M m) with its k-dimension and homogeneous generators."""
    if not isinstance(M, PresentedModule):
        M = free_module(M, 1)
    ring = M.ring
    Mp = minimal_presentation(M)
    g, n = Mp.rank, ring.nvars
    if g == 0:
        return SocleReport(0, [], {}, Mp)
    shifts = list(Mp.shifts)
    tshifts = [s + 1 for _ in range(n) for s in shifts]
    cols = []
    for c in range(g):
        v = {}
        for i in range(n):
            v[(i * g + c, tuple(int(k == i) for k in range(n)))] = 1
        cols.append(v)
    srcs = list(shifts)
    for i in range(n):
        for rel in Mp.relations:
            cols.append({(i * g + c, m): x for (c, m), x in rel.items()})
            srcs.append(vec_degree(rel, shifts) + 1)
    syz, _ = syzygy_generators(cols, tshifts, ring, srcs)
    cands = []
    for v in syz:
        w = ring.nf_vec({t: x for t, x in v.items() if t[0] < g})
        if w:
            cands.append(w)
    rels = list(Mp.relations)
    keep = minimal_generators(cands, shifts, ring, base=rels)
    gens = [cands[i] for i in keep]
    num = _padd(hilbert_numerator(Mp), hilbert_numerator(Mp, gens), -1)
    h = HilbertData.from_raw(num, n)
    degrees = {}
    if h.dim >= 0:
        for d in range(h.offset, h.offset + len(h.numerator)):
            if h.value(d):
                degrees[d] = h.value(d)
    dim = h.total_length() or 0
    if h.dim > 0:
        raise RingError("internal error: socle of positive dimension")
    return SocleReport(dim, gens, degrees, Mp)


def socle_multiply(s: dict, vec: dict, p: int) -> dict:
    return vec_mul_poly(vec, s, p)
