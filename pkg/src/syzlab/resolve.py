"""Minimal presentations, minimal graded free resolutions and syzygy modules."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from syzlab.engine import vec_add, vec_degree, vec_mul_poly
from syzlab.groebner import ideal_colon, minimal_generators, syzygies, syzygy_generators, membership_engine
from syzlab.poly import padd, pmul, pscale
from syzlab.rings import (
    GradedFreeModule,
    GradedRing,
    PresentedModule,
    RingError,
)


class NotRegularError(RingError):
    """Raised when a linear form is a zerodivisor; ``witness`` is killed by it."""

    def __init__(self, message: str, witness: str):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------- Betti tables

@dataclass(frozen=True)
class BettiTable:
    entries: dict = field(default_factory=dict)  # (i, j) -> beta_{i,j}

    @classmethod
    def from_shifts(cls, shifts_per_step) -> "BettiTable":
        entries = {}
        for i, shifts in enumerate(shifts_per_step):
            for j, b in Counter(shifts).items():
                entries[(i, j)] = b
        return cls(entries)

    def totals(self, length: int | None = None) -> list[int]:
        n = (max((i for i, _ in self.entries), default=-1) + 1) if length is None else length
        out = [0] * n
        for (i, _), b in self.entries.items():
            if i < n:
                out[i] += b
        return out

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def to_json(self) -> dict:
        return {f"{i},{j}": b for (i, j), b in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        entries = {}
        for k, b in data.items():
            i, j = (int(s) for s in k.split(","))
            entries[(i, j)] = int(b)
        return cls(entries)

    def to_text(self) -> str:
        """Macaulay-style table: column i, row j - i, dots for zeros."""
        if not self.entries:
            return "total:\n"
        ncol = max(i for i, _ in self.entries) + 1
        rows = sorted({j - i for i, j in self.entries})
        rows = list(range(rows[0], rows[-1] + 1))
        cells = [[str(i) for i in range(ncol)], [str(t) for t in self.totals(ncol)]]
        labels = ["", "total:"]
        for r in rows:
            labels.append(f"{r}:")
            cells.append([str(self.entries[(i, i + r)]) if (i, i + r) in self.entries else "."
                          for i in range(ncol)])
        w = max(len(s) for row in cells for s in row)
        lw = max(len(s) for s in labels)
        lines = []
        for lab, row in zip(labels, cells):
            lines.append(lab.rjust(lw) + " " + " ".join(s.rjust(w) for s in row))
        return "\n".join(line.rstrip() for line in lines) + "\n"


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """F_0 <- F_1 <- ... <- F_N with ``maps[i] = d_{i+1}: F_{i+1} -> F_i``."""

    ring: GradedRing
    shifts: tuple          # shifts[i] = degree shifts of F_i
    maps: tuple            # maps[i] = columns of d_{i+1}
    complete: bool         # True when the resolution terminated (finite pd)
    periodic: bool = False

    @property
    def length(self) -> int:
        return len(self.shifts) - 1

    @property
    def betti(self) -> BettiTable:
        return BettiTable.from_shifts(self.shifts)

    def ranks(self) -> list[int]:
        return [len(s) for s in self.shifts]

    def differential(self, i: int) -> list:
        """Columns of d_i : F_i -> F_{i-1}, i >= 1."""
        return list(self.maps[i - 1])

    def is_minimal(self) -> bool:
        return all(sum(m) > 0 for cols in self.maps for col in cols for (_, m) in col)


# ---------------------------------------------------------------- presentations

def _prune_units(ring: GradedRing, shifts, cols, images):
    p = ring.p
    alive = list(range(len(shifts)))
    cols = [dict(c) for c in cols]
    while True:
        piv = None
        for j, col in enumerate(cols):
            for (c, m), x in sorted(col.items()):
                if not any(m):
                    piv = (j, c, x)
                    break
            if piv:
                break
        if piv is None:
            break
        j, k, x = piv
        col = cols.pop(j)
        inv = pow(x, p - 2, p)

        def elim(v):
            a = {m: y for (c, m), y in v.items() if c == k}
            if not a:
                return v
            return ring.nf_vec(vec_add(v, vec_mul_poly(col, pscale(a, -inv, p), p), p))

        cols = [elim(v) for v in cols]
        images = [elim(v) for v in images]
        alive.remove(k)
    index = {c: i for i, c in enumerate(alive)}
    new_shifts = tuple(shifts[c] for c in alive)

    def relabel(v):
        return {(index[c], m): x for (c, m), x in v.items()}

    return new_shifts, [relabel(c) for c in cols if c], [relabel(v) for v in images], alive


def minimal_presentation_data(M: PresentedModule):
    """Minimal presentation plus bookkeeping.

    Returns ``(P, images, kept)``: ``images[c]`` expresses old generator c over
    the new cover, and new generator i is old generator ``kept[i]``.
    """
    ring = M.ring
    zero = (0,) * ring.nvars
    images = [{(c, zero): 1} for c in range(M.rank)]
    shifts, cols, images, kept = _prune_units(ring, M.shifts, M.relations, images)
    keep = minimal_generators(cols, shifts, ring)
    P = PresentedModule(ring, GradedFreeModule(shifts), tuple(cols[i] for i in keep))
    return P, images, kept


def minimal_presentation(M: PresentedModule, return_map: bool = False):
    """Presentation with mu(M) generators and relations inside m * cover.

    With ``return_map`` also returns, for every original generator, its image
    as a vector over the new cover.
    """
    P, images, _ = minimal_presentation_data(M)
    if return_map:
        return P, images
    return P


def default_nmax(ring: GradedRing) -> int:
    from syzlab.invariants import hilbert
    return 2 * hilbert(ring).dim + 4


def module_key(M: PresentedModule):
    return (M.ring, tuple(M.shifts), tuple(tuple(sorted(c.items())) for c in M.relations))


_RESOLUTIONS: dict = {}
_CACHE_LIMIT = 64


def minimal_free_resolution(M: PresentedModule, n_max: int | None = None) -> FreeComplex:
    """Minimal graded free resolution through F_{n_max}.

    Results are cached per module and extended on demand.
    """
    ring = M.ring
    if n_max is None:
        n_max = default_nmax(ring)
    if n_max < 0:
        raise RingError("n_max must be non-negative")
    key = module_key(M)
    hit = _RESOLUTIONS.get(key)
    if hit is not None:
        shifts, maps, complete = hit
        if complete or len(shifts) - 1 >= n_max:
            return _package(ring, shifts, maps, complete, n_max)
    else:
        P = minimal_presentation(M)
        cols = list(P.relations)
        shifts = [tuple(P.shifts), tuple(vec_degree(c, P.shifts) for c in cols)]
        maps = [tuple(cols)]
        complete = not cols
    shifts, maps = list(shifts), list(maps)
    while not complete and len(shifts) - 1 < n_max:
        nxt, _ = syzygies(list(maps[-1]), list(shifts[-2]), ring, list(shifts[-1]))
        shifts.append(tuple(vec_degree(c, shifts[-1]) for c in nxt))
        maps.append(tuple(nxt))
        if not nxt:
            complete = True
    if len(_RESOLUTIONS) >= _CACHE_LIMIT:
        _RESOLUTIONS.pop(next(iter(_RESOLUTIONS)))
    _RESOLUTIONS[key] = (tuple(shifts), tuple(maps), complete)
    return _package(ring, shifts, maps, complete, n_max)


def _package(ring, shifts, maps, complete, n_max) -> FreeComplex:
    # complete: every nonzero free module of the resolution is included
    complete = complete and len(shifts) - 2 <= n_max
    shifts = list(shifts[:n_max + 1])
    maps = list(maps[:n_max])
    periodic = False
    sigs = [_shape_signature(c, s) for c, s in zip(maps, shifts[1:])]
    for n in range(1, len(sigs) - 2):
        if sigs[n] and sigs[n] == sigs[n + 2]:
            periodic = True
            break
    return FreeComplex(ring, tuple(shifts), tuple(maps), complete, periodic)


def _shape_signature(cols, src_shifts):
    """Permutation and scaling invariant fingerprint of a matrix."""
    base = min(src_shifts, default=0)
    out = []
    for col, s in zip(cols, src_shifts):
        out.append((s - base, tuple(sorted(Counter(m for _, m in col).items()))))
    return tuple(sorted(out))


def syzygy_module(M: PresentedModule, n: int, resolution: FreeComplex | None = None) -> PresentedModule:
    """Omega_n(M): cover F_n with relations d_{n+1} of the minimal resolution."""
    if n < 0:
        raise RingError("syzygy index must be non-negative")
    F = resolution
    if F is None or (F.length < n + 1 and not F.complete):
        F = minimal_free_resolution(M, n + 1)
    ring = M.ring
    if n >= len(F.shifts):
        return PresentedModule(ring, GradedFreeModule(()), ())
    rels = F.maps[n] if n < len(F.maps) else ()
    return PresentedModule(ring, GradedFreeModule(tuple(F.shifts[n])), tuple(rels))


def betti_table(M: PresentedModule, n_max: int | None = None) -> BettiTable:
    return minimal_free_resolution(M, n_max).betti


# ---------------------------------------------------------------- linear quotients

def _substitute(f: dict, v: int, lin: dict, p: int, cache: dict) -> dict:
    """Replace x_v by the linear form ``lin`` (in the other variables) and drop x_v."""
    out: dict = {}
    for m, c in f.items():
        a = m[v]
        rest = {m[:v] + m[v + 1:]: c}
        if a:
            if a not in cache:
                q = {(0,) * (len(m) - 1): 1}
                for _ in range(a):
                    q = pmul(q, lin, p)
                cache[a] = q
            rest = pmul(rest, cache[a], p)
        out = padd(out, rest, p)
    return out


def is_regular_on_module(ell: dict, M: PresentedModule) -> bool:
    ring = M.ring
    g = M.rank
    cols = [{(c, m): x for m, x in ell.items()} for c in range(g)] + list(M.relations)
    src = [s + 1 for s in M.shifts] + M.relation_degrees()
    gens, _ = syzygy_generators(cols, list(M.shifts), ring, src)
    eng = membership_engine(list(M.relations), ring, list(M.shifts))
    for v in gens:
        w = {t: x for t, x in v.items() if t[0] < g}
        if w and not eng.contains(ring.nf_vec(w)):
            return False
    return True


def quotient_by_linear_regular(M: PresentedModule, ell, check_module: bool = False) -> PresentedModule:
    """M / ell M over R / (ell), with one variable eliminated.

    The eliminated variable is the last one with a nonzero coefficient in ell.
    """
    ring = M.ring
    p = ring.p
    if isinstance(ell, str):
        ell = ring.poly(ell)
    if not ell or any(sum(m) != 1 for m in ell):
        raise RingError("expected a nonzero linear form")
    colon = ideal_colon([], [ell], ring)
    if colon:
        raise NotRegularError(f"{ring.fmt(ell)} is a zerodivisor on the ring",
                              ring.fmt(colon[0]))
    if check_module and not is_regular_on_module(ell, M):
        raise NotRegularError(f"{ring.fmt(ell)} is a zerodivisor on the module", "")
    v = max(i for m in ell for i in range(ring.nvars) if m[i])
    c = next(x for m, x in ell.items() if m[v])
    inv = pow(c, p - 2, p)
    lin = {}
    for m, x in ell.items():
        if m[v]:
            continue
        lin[m[:v] + m[v + 1:]] = (-x * inv) % p
    cache: dict = {}
    ideal = [_substitute(f, v, lin, p, cache) for f in ring.ideal_gens]
    names = ring.variables[:v] + ring.variables[v + 1:]
    Rbar = GradedRing(ring.field, names, [f for f in ideal if f])
    rels = []
    for col in M.relations:
        comps: dict = {}
        for (cc, m), x in col.items():
            comps.setdefault(cc, {})[m] = x
        w = {}
        for cc, f in comps.items():
            for m, x in _substitute(f, v, lin, p, cache).items():
                w[(cc, m)] = x
        rels.append(w)
    return PresentedModule(Rbar, GradedFreeModule(M.shifts), tuple(rels))
