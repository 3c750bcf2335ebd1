import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import oracle
from syzlab.acceptance import oracle_case
from syzlab.criteria import socle_lemma_check, socle_lemma_check_by_annihilator
from syzlab.fuzz import random_artinian_ring, random_cm_monomial_ring, random_cyclic_module, random_module
from syzlab.groebner import ideal_module
from syzlab.homology import dual, dual_and_biduality, ext, hom_module, socle, tor
from syzlab.invariants import hilbert
from syzlab.resolve import quotient_by_linear_regular
from syzlab.rings import (
    RingError,
    cyclic_module,
    free_module,
    quotient_ring,
    residue_field,
    shift_module,
)


def test_ext_and_tor_of_residue_field_over_polynomial_ring(R3):
    k = residue_field(R3)
    assert ext(k, k, 0, 3).dims == [1, 2, 1, 0]
    assert tor(k, k, 0, 3).dims == [1, 2, 1, 0]
    assert tor(k, free_module(R3, 1), 0, 2).dims == [1, 0, 0]
    # Ext^2(k, R) = k(2) sits in degree -2
    assert ext(k, free_module(R3, 1), 0, 2).degree_tables == [{}, {}, {-2: 1}]


def test_ext_over_square_of_maximal_ideal(R2):
    k = residue_field(R2)
    assert tor(k, k, 0, 4).dims == [1, 2, 4, 8, 16]
    assert ext(k, k, 0, 3).dims == [1, 2, 4, 8]
    # Betti numbers of the canonical module, read through Matlis duality
    rep = ext(k, free_module(R2, 1), 0, 3)
    assert rep.dims == [2, 3, 6, 12]
    assert rep.degree_tables == [{1: 2}, {0: 3}, {-1: 6}, {-2: 12}]


def test_sharp_alternation_over_xy(R1):
    M = ideal_module(["x"], R1)
    assert tor(M, M, 1, 6).dims == [1, 0, 1, 0, 1, 0]
    e = ext(M, M, 1, 6)
    assert e.dims == [0, 1, 0, 1, 0, 1]
    assert e.runs() == [(1, 1, True), (2, 2, False), (3, 3, True), (4, 4, False), (5, 5, True), (6, 6, False)]
    assert e.longest_zero_run() == (1, 1)


def test_infinite_ext_is_reported_as_none(R1):
    rep = ext(free_module(R1, 1), free_module(R1, 1), 0, 1)
    assert rep.dims == [None, 0]
    assert rep.to_json()["dims"] == ["inf", 0]


def test_range_and_ring_errors(R1, R2):
    with pytest.raises(RingError):
        ext(residue_field(R1), residue_field(R1), 3, 1)
    with pytest.raises(RingError):
        tor(residue_field(R1), residue_field(R2), 0, 1)


def test_degree_cap_env(R1, monkeypatch):
    monkeypatch.setenv("SYZLAB_DEGREE_CAP", "3")
    assert tor(residue_field(R1), residue_field(R1), 0, 6).cap == 3
    monkeypatch.setenv("SYZLAB_DEGREE_CAP", "three")
    with pytest.raises(RingError, match="SYZLAB_DEGREE_CAP"):
        tor(residue_field(R1), residue_field(R1), 0, 1)


def test_hom_examples(R1, R2):
    H = hom_module(residue_field(R2), free_module(R2, 1)).module
    assert H.shifts == (1, 1) and hilbert(H).function(3) == [0, 2, 0]
    assert hom_module(residue_field(R1), free_module(R1, 1)).module.rank == 0
    assert dual(residue_field(R1)).rank == 0
    # (x) = R/(y), so its dual is ann(y) = (x) again, and (x) is reflexive
    D, refl, info = dual_and_biduality(ideal_module(["x"], R1))
    assert refl and info.injective and info.surjective
    assert hilbert(D).function(4) == [1, 1, 1, 1]


def test_socle_examples(R1, R2, R3):
    assert socle(R1).dim == 0 and socle(R3).dim == 0
    s = socle(R2)
    assert s.dim == 2 and s.degrees == {1: 2}
    assert s.to_json(R2)["generators"] == [["x"], ["y"]]
    assert socle(residue_field(R1)).dim == 1
    assert socle(shift_module(residue_field(R2), 3)).degrees == {3: 1}


def test_socle_of_module_with_two_generators(R2):
    s = socle(free_module(R2, [0, 1]))
    assert s.dim == 4 and s.degrees == {1: 2, 2: 2}


# ---------------------------------------------------------------- properties

seeds = st.integers(0, 10_000)


@given(seeds)
def test_tor_is_symmetric(seed):
    rng = random.Random(seed)
    R = random_artinian_ring(rng, 2) if seed % 2 else random_cm_monomial_ring(rng)
    M, N = random_module(rng, R), random_module(rng, R)
    a, b = tor(M, N, 0, 2), tor(N, M, 0, 2)
    assert a.dims == b.dims
    assert a.hilbert == b.hilbert


@settings(max_examples=25)
@given(seeds)
def test_graded_dimensions_match_linear_algebra(seed):
    rng = random.Random(seed)
    R = [quotient_ring(["x", "y"], ["x*y"]), quotient_ring(["x", "y"], ["x^2", "x*y", "y^2"]),
         random_artinian_ring(rng, 2)][seed % 3]
    M, N = random_module(rng, R), random_module(rng, R)
    assert oracle_case(M, N, 2)["mismatches"] == []


@settings(max_examples=20)
@given(seeds)
def test_ext_and_tor_pass_to_quotient_by_regular_form(seed):
    # for t regular on R and M, and N killed by t:
    # Tor^R(M, N) = Tor^{R/t}(M/tM, N) and Ext_R(M, N) = Ext_{R/t}(M/tM, N)
    rng = random.Random(seed)
    R = random_cm_monomial_ring(rng)
    base = R.variables[:-1]
    mono = lambda: "*".join(rng.choice(base) for _ in range(rng.randint(1, 2)))
    M = cyclic_module(R, [mono()])
    nm = mono()
    N = cyclic_module(R, ["t", nm])
    Mbar = quotient_by_linear_regular(M, "t")
    Nbar = cyclic_module(Mbar.ring, [nm])
    assert tor(M, N, 0, 3).hilbert == tor(Mbar, Nbar, 0, 3).hilbert
    assert ext(M, N, 0, 3).hilbert == ext(Mbar, Nbar, 0, 3).hilbert


@given(seeds)
def test_socle_kills_syzygies(seed):
    rng = random.Random(seed)
    R = random_artinian_ring(rng, 3)
    M = random_cyclic_module(rng, R)
    assert socle_lemma_check(M, 1, 3)["ok"]
    assert all(socle_lemma_check_by_annihilator(M, n) for n in (1, 2))


@given(seeds)
def test_hom_from_ring_is_the_module(seed):
    rng = random.Random(seed)
    R = random_artinian_ring(rng, 2) if seed % 2 else random_cm_monomial_ring(rng)
    M = random_module(rng, R)
    assert hilbert(hom_module(free_module(R, 1), M).module) == hilbert(M)
    lo = min(M.shifts) - 2
    H = hilbert(hom_module(M, M).module)
    want = oracle.hom_dims(M, M, range(lo, lo + 5))
    assert {e: (H.value(e) if H.dim >= 0 else 0) for e in want} == want


@given(seeds)
def test_socle_matches_linear_algebra(seed):
    rng = random.Random(seed)
    R = random_artinian_ring(rng, 3)
    M = random_module(rng, R)
    s = socle(M)
    lo = min(M.shifts)
    assert {e: s.degrees.get(e, 0) for e in range(lo, lo + 8)} == oracle.socle_dims(M, range(lo, lo + 8))
