import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import oracle
from syzlab.criteria import takahashi_check
from syzlab.engine import vec_add, vec_mul_poly
from syzlab.fuzz import random_artinian_ring, random_cm_monomial_ring, random_module
from syzlab.groebner import membership_engine
from syzlab.invariants import hilbert
from syzlab.resolve import (
    BettiTable,
    NotRegularError,
    betti_table,
    minimal_free_resolution,
    minimal_presentation,
    quotient_by_linear_regular,
    syzygy_module,
)
from syzlab.rings import (
    GradedFreeModule,
    PresentedModule,
    RingError,
    cyclic_module,
    direct_sum,
    free_module,
    module_from_matrix,
    residue_field,
)


def test_minimal_presentation_drops_redundant_generator(R3):
    # e1 = x * e0, so the module is free of rank one
    M = module_from_matrix(R3, [0, 1], [["x", "-1"]])
    P = minimal_presentation(M)
    assert P.shifts == (0,) and P.relations == ()
    P, images = minimal_presentation(M, return_map=True)
    assert images == [{(0, (0, 0)): 1}, {(0, (1, 0)): 1}]


def test_minimal_presentation_keeps_minimal_relations(R1):
    M = module_from_matrix(R1, [0], [["x"], ["x^2"], ["y"]])
    P = minimal_presentation(M)
    assert P.rank == 1 and len(P.relations) == 2


def test_koszul_betti_table(R3):
    F = minimal_free_resolution(residue_field(R3), 5)
    assert F.betti.entries == {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    assert F.complete and F.is_minimal()
    assert F.ranks() == [1, 2, 1, 0]  # the zero module marks termination


def test_residue_field_over_xy(R1):
    F = minimal_free_resolution(residue_field(R1), 6)
    assert F.ranks() == [1, 2, 2, 2, 2, 2, 2]
    assert not F.complete and F.periodic
    assert all(F.betti[(i, i)] == F.ranks()[i] for i in range(7))


def test_residue_field_over_square_of_maximal_ideal(R2):
    F = minimal_free_resolution(residue_field(R2), 6)
    assert F.ranks() == [2 ** i for i in range(7)]
    assert F.betti.entries == {(i, i): 2 ** i for i in range(7)}


def test_cyclic_module_over_xy_alternates(R1):
    F = minimal_free_resolution(cyclic_module(R1, ["x"]), 5)
    assert F.ranks() == [1] * 6
    assert [F.differential(i)[0] for i in (1, 2, 3)] == [
        {(0, (1, 0)): 1}, {(0, (0, 1)): 1}, {(0, (1, 0)): 1}]


def test_betti_text_layout(R3):
    text = betti_table(residue_field(R3)).to_text()
    assert text.splitlines() == ["       0 1 2", "total: 1 2 1", "    0: 1 2 1"]
    t = BettiTable({(0, 0): 1, (1, 2): 3})
    assert BettiTable.from_json(t.to_json()) == t
    assert t.to_text().splitlines()[2:] == ["    0: 1 .", "    1: . 3"]


def test_syzygy_module_of_residue_field(R3):
    m = syzygy_module(residue_field(R3), 1)
    assert m.shifts == (1, 1)
    assert hilbert(m).function(4) == [0, 2, 3, 4]
    assert syzygy_module(residue_field(R3), 3).rank == 0
    assert syzygy_module(residue_field(R3), 0).shifts == (0,)
    with pytest.raises(RingError):
        syzygy_module(residue_field(R3), -1)


def test_resolution_cache_extends(R1):
    F2 = minimal_free_resolution(residue_field(R1), 2)
    F4 = minimal_free_resolution(residue_field(R1), 4)
    assert F4.shifts[:3] == F2.shifts and F4.length == 4


def test_quotient_by_linear_regular(R1):
    Q = quotient_by_linear_regular(free_module(R1, 1), "x+y")
    assert Q.ring.variables == ("x",)
    assert [Q.ring.fmt(f) for f in Q.ring.gb] == ["x^2"]
    assert hilbert(Q).function(4) == [1, 1, 0, 0]


def test_zero_divisor_is_refused(R1):
    with pytest.raises(NotRegularError) as info:
        quotient_by_linear_regular(residue_field(R1), "x")
    assert info.value.witness == "y"
    with pytest.raises(RingError):
        quotient_by_linear_regular(residue_field(R1), "x^2")


# ---------------------------------------------------------------- properties

seeds = st.integers(0, 10_000)


def _ring_and_module(seed):
    rng = random.Random(seed)
    R = random_artinian_ring(rng, 2) if seed % 2 else random_cm_monomial_ring(rng)
    return R, random_module(rng, R)


@given(seeds)
def test_resolution_is_an_exact_minimal_complex(seed):
    R, M = _ring_and_module(seed)
    F = minimal_free_resolution(M, 3)
    assert F.is_minimal()
    for i in range(1, len(F.maps)):
        for col in F.maps[i]:
            total = {}
            for (j, m), x in col.items():
                total = vec_add(total, vec_mul_poly(F.maps[i - 1][j], {m: x}, R.p), R.p)
            assert R.nf_vec(total) == {}
    # exact at F_1 and F_2: every kernel vector of d_i lies in the image of d_{i+1}
    for i in (1, 2):
        if i + 1 > len(F.maps) or not F.maps[i - 1]:
            continue
        eng = membership_engine(list(F.maps[i]), R, list(F.shifts[i]))
        lo = min(F.shifts[i])
        for e in range(lo, lo + 3):
            for v in oracle.kernel_vectors(R, list(F.maps[i - 1]), list(F.shifts[i - 1]),
                                           list(F.shifts[i]), e):
                assert eng.contains(R.nf_vec(v))


@given(seeds)
def test_graded_betti_numbers_match_linear_algebra(seed):
    R, M = _ring_and_module(seed)
    length = 3
    F = minimal_free_resolution(M, length)
    P = minimal_presentation(M)
    top = max((max(s, default=0) for s in F.shifts), default=0) + 1
    O = oracle.resolution_of(P, length, top)
    for i in range(min(len(F.shifts), len(O.shifts))):
        want = Counter(d for d in O.shifts[i] if d <= top)
        assert Counter(F.shifts[i]) == want


@given(seeds)
def test_betti_table_ignores_redundant_generators(seed):
    R, M = _ring_and_module(seed)
    # adjoin a generator equal to x * e0 plus a relation saying so
    shifts = list(M.shifts) + [M.shifts[0] + 1]
    g = len(M.shifts)
    x = R.var(0)
    rels = list(M.relations) + [{(0, m): c for m, c in x.items()} | {(g, (0,) * R.nvars): R.p - 1}]
    M2 = PresentedModule(R, GradedFreeModule(tuple(shifts)), tuple(rels))
    assert betti_table(M2, 3) == betti_table(M, 3)


@settings(max_examples=20)
@given(seeds)
def test_betti_numbers_survive_reduction_mod_regular_form(seed):
    # t + a*x is regular on A[t] (A Artinian), so resolving commutes with going mod it
    rng = random.Random(seed)
    R = random_cm_monomial_ring(rng)
    names = R.variables[:-1]
    mono = "*".join(rng.choice(names) for _ in range(rng.randint(1, 2)))
    M = cyclic_module(R, [mono])
    ell = f"t + {rng.randint(0, 5)}*{names[0]}"
    Q = quotient_by_linear_regular(M, ell)
    assert betti_table(Q, 3) == betti_table(M, 3)
    hm, hq = hilbert(M), hilbert(Q)
    assert hq.function(8) == [hm.value(e) - hm.value(e - 1) for e in range(8)]


@settings(max_examples=10)
@given(seeds)
def test_syzygies_of_residue_field_mod_regular_form(seed):
    rng = random.Random(seed)
    R = random_cm_monomial_ring(rng)
    a = rng.randint(0, 3)
    rep = takahashi_check(R, f"t + {a}*{R.variables[0]}", 1, 3)
    assert rep["ok"], rep["rows"]


def test_direct_sum_betti_is_additive(R1):
    A, B = residue_field(R1), cyclic_module(R1, ["x"])
    s = betti_table(direct_sum(A, B), 4).entries
    a, b = betti_table(A, 4).entries, betti_table(B, 4).entries
    assert s == dict(Counter(a) + Counter(b))
