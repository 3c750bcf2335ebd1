import pytest
from hypothesis import given
from hypothesis import strategies as st

from syzlab.poly import (
    FieldSpec,
    Polynomial,
    PolynomialError,
    make_poly,
    monomial_compare,
    poly_arithmetic,
)
from syzlab.rings import GradedFreeModule, PresentedModule, RingError, define_ring, free_module

XY = ["x", "y"]


def P(text, p=32003, names=XY):
    return make_poly(text, names, p)


def test_add_inverse_is_zero():
    assert poly_arithmetic(P("x*y"), P("-x*y"), "add").is_zero()


def test_mul_difference_of_squares():
    assert poly_arithmetic(P("x+y"), P("x-y"), "mul") == P("x^2-y^2")


def test_scale_over_f5():
    f = make_poly("x^2+x*y", XY, 5)
    assert poly_arithmetic(f, 3, "scale") == make_poly("3*x^2+3*x*y", XY, 5)


def test_mismatched_variable_count():
    with pytest.raises(PolynomialError):
        P("x") + make_poly("x", ["x", "y", "z"])


def test_terms_sorted_and_stripped():
    f = P("y^3 + x^2*y + 0*x^3")
    assert list(f.terms) == [(2, 1), (0, 3)]
    assert P("x - x").terms == {}


def test_degrevlex_examples():
    assert monomial_compare((2, 0), (1, 1)) == 1
    assert monomial_compare((1, 1), (1, 1)) == 0
    # x^2*y against y^3: equal degree, the last nonzero entry of (2,1)-(0,3) is -2 < 0
    assert monomial_compare((2, 1), (0, 3)) == 1
    assert monomial_compare((0, 3), (2, 1)) == -1


def test_degrevlex_three_variables():
    # x*z^2 < y^3 in degrevlex (z has the larger exponent)
    assert monomial_compare((1, 0, 2), (0, 3, 0)) == -1
    assert monomial_compare((0, 2, 0), (1, 0, 1)) == 1


def test_compare_length_mismatch():
    with pytest.raises(PolynomialError):
        monomial_compare((1, 0), (1, 0, 0))


def test_define_ring_examples():
    r1 = define_ring({"field": {"p": 32003}, "vars": XY, "ideal": ["x*y"]})
    assert [r1.fmt(g) for g in r1.gb] == ["x*y"]
    r2 = define_ring({"field": {"p": 32003}, "vars": XY, "ideal": ["x^2", "x*y", "y^2"]})
    assert sorted(r2.fmt(g) for g in r2.gb) == ["x*y", "x^2", "y^2"]
    r3 = define_ring({"field": {"p": 32003}, "vars": XY, "ideal": []})
    assert r3.gb == () and r3.is_polynomial_ring()


def test_define_ring_rejects_bad_input():
    with pytest.raises(RingError, match="homogeneous"):
        define_ring({"vars": XY, "ideal": ["x^2 + y"]})
    with pytest.raises(RingError, match="not prime"):
        define_ring({"field": {"p": 12}, "vars": XY, "ideal": []})
    with pytest.raises(RingError, match="characteristic 0"):
        define_ring({"field": {"p": 0}, "vars": XY, "ideal": []})
    with pytest.raises(RingError, match="unknown"):
        define_ring({"vars": XY, "ideal": [], "order": "lex"})
    with pytest.raises(RingError):
        define_ring({"vars": XY, "degrees": [1, 2], "ideal": []})


def test_ring_gb_is_reduced_and_monic():
    R = define_ring({"vars": XY, "ideal": ["2*x^2 + 2*y^2", "3*x*y"]})
    assert sorted(R.fmt(g) for g in R.gb) == ["x*y", "x^2 + y^2", "y^3"]
    assert [R.fmt(g) for g in R.ideal_gens] == ["x^2 + y^2", "x*y"]


def test_exponent_overflow_is_an_error():
    with pytest.raises(OverflowError):
        Polynomial(1, 7, {(2**40,): 1})


def test_field_spec_default():
    assert FieldSpec().p == 32003


def test_module_rejects_inhomogeneous_relation(R1):
    with pytest.raises(RingError):
        PresentedModule(R1, GradedFreeModule((0, 0)), ({(0, (1, 0)): 1, (1, (2, 0)): 1},))
    assert free_module(R1, 2).rank == 2


def test_ring_roundtrip_through_describe(R4):
    assert define_ring(R4.describe()) == R4


# ---------------------------------------------------------------- properties

P7 = 7
monos = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(monos, st.integers(1, P7 - 1), max_size=5).map(lambda d: Polynomial(3, P7, d))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f and f * g == g * f
    assert (f - f).is_zero()


@given(monos, monos, monos)
def test_degrevlex_is_a_monomial_order(a, b, c):
    assert monomial_compare(a, b) == -monomial_compare(b, a)
    assert (monomial_compare(a, b) == 0) == (a == b)
    if monomial_compare(a, b) > 0 and monomial_compare(b, c) > 0:
        assert monomial_compare(a, c) > 0
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert monomial_compare(ac, bc) == monomial_compare(a, b)
    if sum(a) != sum(b):
        assert (monomial_compare(a, b) > 0) == (sum(a) > sum(b))


def _homogeneous(d):
    return st.dictionaries(
        st.tuples(st.integers(0, d), st.integers(0, d)).filter(lambda m: sum(m) <= d)
        .map(lambda m: (m[0], m[1], d - m[0] - m[1])),
        st.integers(1, P7 - 1), min_size=1, max_size=4,
    ).map(lambda t: Polynomial(3, P7, t))


@given(st.integers(0, 3).flatmap(lambda d: st.tuples(_homogeneous(d), _homogeneous(d))),
       st.integers(0, 3).flatmap(_homogeneous))
def test_homogeneity_preserved(pair, h):
    f, g = pair
    s = f + g
    assert s.is_zero() or (s.is_homogeneous() and s.degree() == f.degree())
    prod = f * h
    assert prod.is_homogeneous() and prod.degree() == f.degree() + h.degree()


@given(polys)
def test_format_parse_roundtrip(f):
    names = ["x", "y", "z"]
    assert make_poly(f.to_string(names), names, P7) == f
