"""Standard-graded quotient rings S/I and finitely presented graded modules.

A :class:`GradedRing` is the quotient of ``S = F_p[x_1..x_n]`` (every variable
of degree 1) by a homogeneous ideal; the graded maximal ideal is the ideal of
the variables and ``k = R/m``.  A :class:`PresentedModule` is the cokernel of
a homogeneous matrix between graded free R-modules, stored column-wise as raw
module vectors (see :mod:`syzlab.engine`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

from syzlab.engine import SubmoduleGB, term_key, vec_degree, vec_is_homogeneous
from syzlab.poly import (
    DEFAULT_PRIME,
    FieldSpec,
    Polynomial,
    PolynomialError,
    format_poly,
    is_homogeneous_raw,
    parse_poly,
    plead,
    pnormal_form,
    desc_key,
)


class RingError(ValueError):
    pass


class GradedRing:
    """``S/I`` with a cached reduced Groebner basis of ``I``."""

    def __init__(self, field: FieldSpec, variables: Sequence[str], ideal: Sequence[dict]):
        self.field = field
        self.p = field.p
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        if len(set(self.variables)) != self.nvars:
            raise RingError("duplicate variable names")
        gens = []
        for f in ideal:
            if isinstance(f, Polynomial):
                f = f.raw()
            if not is_homogeneous_raw(f):
                raise RingError(
                    f"ideal generator {format_poly(f, self.variables, self.p)} is not homogeneous")
            if f:
                inv = pow(f[plead(f)], self.p - 2, self.p)
                gens.append({m: (x * inv) % self.p for m, x in f.items()})
        self.ideal_gens = tuple(gens)
        eng = SubmoduleGB(self.nvars, [0], self.p)
        eng.add({(0, m): c for m, c in f.items()} for f in gens)
        eng.run()
        self.gb = tuple(_reduced_ideal_basis(eng, self.p))

    # ------------------------------------------------------------ helpers

    def poly(self, text: str) -> dict:
        return parse_poly(text, self.variables, self.p)

    def fmt(self, f: dict) -> str:
        return format_poly(f, self.variables, self.p)

    def nf(self, f: dict) -> dict:
        return pnormal_form(f, self.gb, self.p)

    def nf_vec(self, v: dict) -> dict:
        """Reduce every component of a module vector modulo I."""
        if not self.gb:
            return dict(v)
        comps: dict = {}
        for (c, m), x in v.items():
            comps.setdefault(c, {})[m] = x
        out = {}
        for c, f in comps.items():
            for m, x in self.nf(f).items():
                out[(c, m)] = x
        return out

    def one(self) -> dict:
        return {(0,) * self.nvars: 1}

    def var(self, i: int) -> dict:
        return {tuple(int(j == i) for j in range(self.nvars)): 1}

    @cached_property
    def ambient(self) -> "GradedRing":
        if not self.gb:
            return self
        return GradedRing(self.field, self.variables, [])

    def is_polynomial_ring(self) -> bool:
        return not self.gb

    def embedding_dimension(self) -> int:
        """mu(m) = n - dim_k I_1, read off the degree-1 part of the reduced basis."""
        return self.nvars - sum(1 for g in self.gb if sum(plead(g)) == 1)

    def describe(self) -> dict:
        return {
            "field": {"p": self.p},
            "vars": list(self.variables),
            "ideal": [self.fmt(f) for f in self.ideal_gens],
        }

    def __eq__(self, other):
        if not isinstance(other, GradedRing):
            return NotImplemented
        return (self.p, self.variables, self.gb) == (other.p, other.variables, other.gb)

    def __hash__(self):
        return hash((self.p, self.variables, tuple(tuple(sorted(g.items())) for g in self.gb)))

    def __repr__(self):
        ideal = ", ".join(self.fmt(g) for g in self.ideal_gens) or "0"
        return f"GradedRing(F_{self.p}[{', '.join(self.variables)}]/({ideal}))"


def _reduced_ideal_basis(eng: SubmoduleGB, p: int) -> list[dict]:
    elems = [{m: x for (_, m), x in v.items()} for v in eng.basis()]
    # minimalize, then reduce tails against the rest
    elems.sort(key=lambda f: desc_key(plead(f)))
    minimal = []
    for f in sorted(elems, key=lambda f: (sum(plead(f)), desc_key(plead(f)))):
        lf = plead(f)
        if not any(all(a <= b for a, b in zip(plead(g), lf)) for g in minimal):
            minimal.append(f)
    out = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lf = plead(f)
        tail = {m: x for m, x in f.items() if m != lf}
        r = pnormal_form(tail, others, p)
        inv = pow(f[lf], p - 2, p)
        g = {m: (x * inv) % p for m, x in r.items()}
        g[lf] = 1
        out.append(g)
    out.sort(key=lambda f: desc_key(plead(f)))
    return out


def define_ring(spec: dict | str | Path) -> GradedRing:
    """Build a ring from a description ``{"field": {"p": ..}, "vars": [..],
    "ideal": [..]}``, given as a dict, a JSON string or a JSON file path."""
    if isinstance(spec, Path) or (isinstance(spec, str) and not spec.lstrip().startswith("{")):
        spec = json.loads(Path(spec).read_text())
    elif isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict):
        raise RingError("ring description must be a JSON object")
    unknown = set(spec) - {"field", "vars", "degrees", "ideal", "name"}
    if unknown:
        raise RingError(f"unknown ring fields: {sorted(unknown)}")
    fld = spec.get("field", {"p": DEFAULT_PRIME})
    if isinstance(fld, int):
        p = fld
    else:
        p = fld.get("p", DEFAULT_PRIME)
    try:
        fs = FieldSpec(int(p))
    except PolynomialError as exc:
        raise RingError(str(exc)) from None
    variables = spec.get("vars")
    if not variables or not all(isinstance(v, str) and v.isidentifier() for v in variables):
        raise RingError("vars must be a non-empty list of identifiers")
    degrees = spec.get("degrees")
    if degrees is not None and any(d != 1 for d in degrees):
        raise RingError("only standard grading (all variable degrees 1) is supported")
    try:
        ideal = [parse_poly(s, variables, fs.p) for s in spec.get("ideal", [])]
    except PolynomialError as exc:
        raise RingError(str(exc)) from None
    return GradedRing(fs, variables, ideal)


def polynomial_ring(variables: Sequence[str], p: int = DEFAULT_PRIME) -> GradedRing:
    return GradedRing(FieldSpec(p), variables, [])


def quotient_ring(variables: Sequence[str], ideal: Sequence[str], p: int = DEFAULT_PRIME) -> GradedRing:
    return define_ring({"field": {"p": p}, "vars": list(variables), "ideal": list(ideal)})


# ---------------------------------------------------------------- modules

@dataclass(frozen=True)
class GradedFreeModule:
    """A free module ``sum_i R(-shifts[i])``; basis element i sits in degree shifts[i]."""

    shifts: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.shifts)


@dataclass(frozen=True, eq=False)
class PresentedModule:
    """coker(relations: F_1 -> F_0) with F_0 = cover.

    ``relations`` is a tuple of raw column vectors over the cover, each
    homogeneous with respect to ``cover.shifts``.
    """

    ring: GradedRing
    cover: GradedFreeModule
    relations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        shifts = self.cover.shifts
        rels = []
        for col in self.relations:
            col = {t: x % self.ring.p for t, x in col.items() if x % self.ring.p}
            for c, _ in col:
                if not 0 <= c < len(shifts):
                    raise RingError(f"relation refers to generator {c} outside the cover")
            if not vec_is_homogeneous(col, shifts):
                raise RingError("relation column is not homogeneous for the cover shifts")
            col = self.ring.nf_vec(col)
            if col:
                rels.append(col)
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def shifts(self) -> tuple:
        return self.cover.shifts

    @property
    def rank(self) -> int:
        return self.cover.rank

    def relation_degrees(self) -> list[int]:
        return [vec_degree(c, self.shifts) for c in self.relations]

    def describe(self) -> dict:
        R = self.ring
        return {
            "shifts": list(self.shifts),
            "relations": [
                [R.fmt({m: x for (cc, m), x in col.items() if cc == c}) for c in range(self.rank)]
                for col in self.relations
            ],
        }

    def __repr__(self):
        return f"PresentedModule(rank={self.rank}, relations={len(self.relations)}, ring={self.ring!r})"


def free_module(ring: GradedRing, rank_or_shifts: int | Sequence[int] = 1) -> PresentedModule:
    shifts = (0,) * rank_or_shifts if isinstance(rank_or_shifts, int) else tuple(rank_or_shifts)
    return PresentedModule(ring, GradedFreeModule(shifts), ())


def residue_field(ring: GradedRing, shift: int = 0) -> PresentedModule:
    rels = [{(0, m): 1 for m in ring.var(i)} for i in range(ring.nvars)]
    return PresentedModule(ring, GradedFreeModule((shift,)), tuple(rels))


def cyclic_module(ring: GradedRing, ideal: Sequence[dict | str], shift: int = 0) -> PresentedModule:
    """R/J for an ideal J given by homogeneous generators."""
    rels = []
    for f in ideal:
        if isinstance(f, str):
            f = ring.poly(f)
        rels.append({(0, m): x for m, x in f.items()})
    return PresentedModule(ring, GradedFreeModule((shift,)), tuple(rels))


def module_from_matrix(ring: GradedRing, shifts: Sequence[int], columns: Sequence[Sequence[str | dict]]) -> PresentedModule:
    """Cokernel of a matrix given column by column as polynomials (text or raw)."""
    rels = []
    for col in columns:
        if len(col) != len(shifts):
            raise RingError("relation column length does not match the number of generators")
        v = {}
        for c, f in enumerate(col):
            if isinstance(f, str):
                f = ring.poly(f)
            for m, x in f.items():
                v[(c, m)] = x
        rels.append(v)
    return PresentedModule(ring, GradedFreeModule(tuple(shifts)), tuple(rels))


def direct_sum(*mods: PresentedModule) -> PresentedModule:
    if not mods:
        raise RingError("empty direct sum")
    ring = mods[0].ring
    shifts: list = []
    rels: list = []
    for M in mods:
        if M.ring != ring:
            raise RingError("direct sum of modules over different rings")
        off = len(shifts)
        shifts.extend(M.shifts)
        rels.extend({(c + off, m): x for (c, m), x in col.items()} for col in M.relations)
    return PresentedModule(ring, GradedFreeModule(tuple(shifts)), tuple(rels))


def shift_module(M: PresentedModule, a: int) -> PresentedModule:
    """M(-a): every generator degree raised by a."""
    return PresentedModule(M.ring, GradedFreeModule(tuple(s + a for s in M.shifts)), M.relations)


def sorted_vec(v: dict) -> list:
    return sorted(v.items(), key=lambda t: term_key(t[0]))
