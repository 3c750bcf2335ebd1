"""Hilbert series, dimension, multiplicity, depth and ring classification."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from syzlab.groebner import membership_engine
from syzlab.poly import mono_divides
from syzlab.resolve import minimal_free_resolution, minimal_presentation
from syzlab.rings import GradedFreeModule, GradedRing, PresentedModule, RingError, free_module


# ---------------------------------------------------------------- Laurent polynomial helpers
# A numerator is a dict exponent -> integer coefficient.

def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pshift(a: dict, k: int) -> dict:
    return {e + k: c for e, c in a.items()}


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _divide_one_minus_t(a: dict) -> dict | None:
    """a / (1 - t) when exact, else None."""
    if not a:
        return {}
    if sum(a.values()) != 0:
        return None
    lo, hi = min(a), max(a)
    out = {}
    acc = 0
    for e in range(lo, hi):
        acc += a.get(e, 0)
        if acc:
            out[e] = acc
    return out


# ---------------------------------------------------------------- monomial ideals

def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def monomial_numerator(gens, nvars: int) -> dict:
    """K(t) with HS(S/J) = K(t) / (1-t)^nvars for the monomial ideal J = (gens)."""
    return _numerator(tuple(_minimalize([tuple(g) for g in gens])), nvars, {})


def _numerator(gens: tuple, n: int, memo: dict) -> dict:
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    key = gens
    if key in memo:
        return memo[key]
    # base case: pairwise coprime generators give a product
    support = [0] * n
    coprime = True
    for g in gens:
        for i, a in enumerate(g):
            if a:
                if support[i]:
                    coprime = False
                support[i] += 1
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _pmul(out, {0: 1, sum(g): -1})
        memo[key] = out
        return out
    i = max(range(n), key=lambda v: support[v])
    # the smallest positive exponent keeps the pivot outside J
    e = min(g[i] for g in gens if g[i])
    pivot = tuple(e if v == i else 0 for v in range(n))
    plus = tuple(_minimalize(list(gens) + [pivot]))
    colon = tuple(_minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens]))
    out = _padd(_numerator(plus, n, memo), _pshift(_numerator(colon, n, memo), e))
    memo[key] = out
    return out


# ---------------------------------------------------------------- Hilbert data

@dataclass(frozen=True)
class HilbertData:
    """HS(M) = numerator(t) / (1-t)^dim, numerator a Laurent polynomial."""

    numerator: tuple      # coefficients of t^offset, t^(offset+1), ...
    offset: int
    dim: int              # Krull dimension; -1 for the zero module
    multiplicity: int

    @classmethod
    def from_raw(cls, num: dict, nvars: int) -> "HilbertData":
        d = nvars
        num = {e: c for e, c in num.items() if c}
        if not num:
            return cls((), 0, -1, 0)
        while d > 0:
            q = _divide_one_minus_t(num)
            if q is None:
                break
            num = q
            d -= 1
        lo, hi = min(num), max(num)
        coeffs = tuple(num.get(e, 0) for e in range(lo, hi + 1))
        return cls(coeffs, lo, d, sum(coeffs))

    def value(self, degree: int) -> int:
        """dim_k M_degree."""
        total = 0
        for k, c in enumerate(self.numerator):
            s = degree - self.offset - k
            if s < 0:
                continue
            total += c * (comb(s + self.dim - 1, self.dim - 1) if self.dim > 0 else int(s == 0))
        return total

    def function(self, count: int, start: int = 0) -> list[int]:
        return [self.value(start + d) for d in range(count)]

    def total_length(self) -> int | None:
        """dim_k M when finite, else None."""
        if self.dim > 0:
            return None
        return sum(self.numerator)

    def numerator_dict(self) -> dict:
        return {self.offset + k: c for k, c in enumerate(self.numerator) if c}

    def to_json(self, count: int = 8) -> dict:
        return {
            "numerator": list(self.numerator),
            "offset": self.offset,
            "dim": self.dim,
            "multiplicity": self.multiplicity,
            "hilbertFunction": self.function(count, min(self.offset, 0)),
            "functionStart": min(self.offset, 0),
        }


def _as_module(X) -> PresentedModule:
    if isinstance(X, GradedRing):
        return free_module(X, 1)
    return X


def hilbert_numerator(M: PresentedModule, extra: list | None = None) -> dict:
    """Unreduced numerator over (1-t)^n from the lead-term module of the relations."""
    M = _as_module(M)
    ring = M.ring
    rels = list(M.relations) + list(extra or ())
    eng = membership_engine(rels, ring, list(M.shifts))
    leads = eng.lead_monomials()
    num: dict = {}
    for c, s in enumerate(M.shifts):
        num = _padd(num, _pshift(monomial_numerator(leads[c], ring.nvars), s))
    return num


def hilbert(M) -> HilbertData:
    """Hilbert series of a presented module (or of a ring, as a module over itself)."""
    M = _as_module(M)
    return HilbertData.from_raw(hilbert_numerator(M), M.ring.nvars)


def lift_to_ambient(M: PresentedModule) -> PresentedModule:
    """M regarded as a module over the polynomial ring S."""
    M = _as_module(M)
    ring = M.ring
    S = ring.ambient
    rels = list(M.relations)
    for c in range(M.rank):
        for g in ring.gb:
            rels.append({(c, m): x for m, x in g.items()})
    return PresentedModule(S, GradedFreeModule(M.shifts), tuple(rels))


def hilbert_via_resolution(M) -> HilbertData:
    """Independent path: alternating sum of graded Betti numbers over S."""
    MS = lift_to_ambient(M)
    F = minimal_free_resolution(MS, MS.ring.nvars + 1)
    num: dict = {}
    for i, shifts in enumerate(F.shifts):
        for s in shifts:
            num = _padd(num, {s: (-1) ** i})
    return HilbertData.from_raw(num, MS.ring.nvars)


def projective_dimension_ambient(M) -> int:
    MS = lift_to_ambient(M)
    F = minimal_free_resolution(MS, MS.ring.nvars + 1)
    return max(i for i, s in enumerate(F.shifts) if s)


def depth(M) -> int:
    """depth(M) = n - pd_S(M) (Auslander-Buchsbaum over the ambient ring)."""
    M = _as_module(M)
    if hilbert(M).dim < 0:
        raise RingError("depth of the zero module is undefined")
    return M.ring.nvars - projective_dimension_ambient(M)


def krull_dim(M) -> int:
    return hilbert(M).dim


def minimal_number_of_generators(M) -> int:
    return minimal_presentation(_as_module(M)).rank


def is_mcm(M) -> bool:
    M = _as_module(M)
    h = hilbert(M)
    return h.dim >= 0 and depth(M) == hilbert(M.ring).dim


# ---------------------------------------------------------------- canonical module and classification

def canonical_module(R: GradedRing) -> PresentedModule:
    """omega_R = Ext^c_S(R, S(-n)) for c = codim, minimally presented over R."""
    n = R.nvars
    S = R.ambient
    F = minimal_free_resolution(free_module(S, 1) if not R.gb else lift_to_ambient(R), n + 1)
    pd = max(i for i, s in enumerate(F.shifts) if s)
    c = n - hilbert(R).dim
    if pd != c:
        raise RingError("the ring is not Cohen-Macaulay; no canonical module is computed")
    top = F.shifts[c]
    shifts = tuple(n - a for a in top)
    rels = []
    if c > 0:
        dc = F.maps[c - 1]
        for k in range(len(F.shifts[c - 1])):
            col = {}
            for j, v in enumerate(dc):
                for (cc, m), x in v.items():
                    if cc == k:
                        col[(j, m)] = x
            rels.append(col)
    W = PresentedModule(R, GradedFreeModule(shifts), tuple(rels))
    return minimal_presentation(W)


@dataclass(frozen=True)
class RingClassification:
    dim: int
    depth: int
    embdim: int
    multiplicity: int
    isRegular: bool
    isCM: bool
    isGorenstein: bool
    type: int | None
    hasMinimalMultiplicity: bool

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "depth": self.depth,
            "embdim": self.embdim,
            "multiplicity": self.multiplicity,
            "regular": self.isRegular,
            "cm": self.isCM,
            "gorenstein": self.isGorenstein,
            "type": self.type,
            "minMult": self.hasMinimalMultiplicity,
        }


_CLASSIFY_CACHE: dict = {}


def classify(R: GradedRing) -> RingClassification:
    key = R
    if key in _CLASSIFY_CACHE:
        return _CLASSIFY_CACHE[key]
    h = hilbert(R)
    dp = depth(R)
    emb = R.embedding_dimension()
    cm = dp == h.dim
    typ = canonical_module(R).rank if cm else None
    out = RingClassification(
        dim=h.dim,
        depth=dp,
        embdim=emb,
        multiplicity=h.multiplicity,
        isRegular=emb == h.dim,
        isCM=cm,
        isGorenstein=cm and typ == 1,
        type=typ,
        hasMinimalMultiplicity=h.multiplicity == emb - h.dim + 1,
    )
    _CLASSIFY_CACHE[key] = out
    return out
