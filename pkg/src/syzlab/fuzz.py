"""Seeded random rings and modules for property suites and the corpus runner."""

from __future__ import annotations

import random

from syzlab.poly import DEFAULT_PRIME, format_mono
from syzlab.rings import GradedRing, PresentedModule, define_ring, module_from_matrix

NAMES = ("x", "y", "z", "w")


def _mono_text(m, names):
    return format_mono(tuple(m), names)


def random_monomial(rng: random.Random, nvars: int, degree: int) -> tuple:
    e = [0] * nvars
    for _ in range(degree):
        e[rng.randrange(nvars)] += 1
    return tuple(e)


def random_artinian_ring(rng: random.Random, max_vars: int = 3, p: int = DEFAULT_PRIME) -> GradedRing:
    """F_p[x..]/J with J monomial and containing a power of every variable."""
    n = rng.randint(1, max_vars)
    names = NAMES[:n]
    gens = set()
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(2, 4)
        gens.add(tuple(e))
    for _ in range(rng.randint(0, 3)):
        gens.add(random_monomial(rng, n, rng.randint(2, 3)))
    ideal = sorted(_mono_text(m, names) for m in gens)
    return define_ring({"field": {"p": p}, "vars": list(names), "ideal": ideal})


def random_cm_monomial_ring(rng: random.Random, p: int = DEFAULT_PRIME) -> GradedRing:
    """A one-dimensional CM ring: an Artinian monomial quotient with a free variable adjoined."""
    base = random_artinian_ring(rng, 2, p)
    names = list(base.variables) + ["t"]
    ideal = [base.fmt(f) for f in base.ideal_gens]
    return define_ring({"field": {"p": p}, "vars": names, "ideal": ideal})


def random_cyclic_module(rng: random.Random, ring: GradedRing) -> PresentedModule:
    """R/(monomials), with one to three generators of degree 1 or 2."""
    names = ring.variables
    gens = set()
    for _ in range(rng.randint(1, 3)):
        gens.add(random_monomial(rng, ring.nvars, rng.randint(1, 2)))
    cols = [[_mono_text(m, names)] for m in sorted(gens)]
    return module_from_matrix(ring, [0], cols)


def random_linear_form(rng: random.Random, ring: GradedRing) -> dict:
    p = ring.p
    f = {}
    for i in range(ring.nvars):
        c = rng.randrange(p)
        if c:
            f[tuple(int(j == i) for j in range(ring.nvars))] = c
    return f or ring.var(0)


def random_module(rng: random.Random, ring: GradedRing) -> PresentedModule:
    """A small graded module: cyclic monomial quotients or a two-generator cokernel
    with random linear and quadratic relation columns."""
    kind = rng.randrange(3)
    if kind < 2:
        return random_cyclic_module(rng, ring)
    shifts = [0, rng.randint(0, 1)]
    cols = []
    for _ in range(rng.randint(1, 3)):
        deg = max(shifts) + rng.randint(0, 1) + (1 if shifts[0] == shifts[1] else 0)
        col = []
        for s in shifts:
            d = deg - s
            if d <= 0:
                col.append("0")
                continue
            terms = []
            for _ in range(rng.randint(1, 2)):
                c = rng.randint(1, 5)
                terms.append(f"{c}*{_mono_text(random_monomial(rng, ring.nvars, d), ring.variables)}")
            col.append(" + ".join(terms))
        cols.append(col)
    return module_from_matrix(ring, shifts, cols)
