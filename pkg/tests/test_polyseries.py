import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from covercount.polyseries import (
    Monomial,
    PolyCoeff,
    Series,
    TruncationError,
    apply_operator,
    arith,
    coeff,
    compose_poly,
    ddx,
    ddz,
    exp_series,
    p_ddp,
    series_from_json,
    series_to_json,
    sum_p_ddp,
    u_ddu,
    z_ddz,
)


def mono(q=1, u=0, x=0, p=None):
    return PolyCoeff.mono(q, u=u, x=x, p=p)


def z(N):
    return Series.gen(N)


UP1 = mono(u=1, p={1: 1})
X = mono(x=1)

monomials = st.builds(
    Monomial.make,
    st.integers(0, 2),
    st.integers(0, 2),
    st.dictionaries(st.integers(1, 3), st.integers(0, 2), max_size=2),
)
fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)
polys = st.dictionaries(monomials, fractions, max_size=3).map(PolyCoeff)


def series(order=3, constant=True):
    coeffs = st.lists(polys, min_size=order + 1, max_size=order + 1)
    if not constant:
        coeffs = coeffs.map(lambda cs: [PolyCoeff()] + cs[1:])
    return coeffs.map(lambda cs: Series(cs, order))


def test_mul_examples():
    assert z(3) * z(3) == Series([0, 0, 1], 3)
    assert (1 + z(2)) ** 3 == Series([1, 3, 3], 2)
    b = X + z(2) * UP1
    sq = b * b
    assert sq == Series([mono(x=2), mono(2, u=1, x=1, p={1: 1}), mono(u=2, p={1: 2})], 2)


def test_arith_dispatch():
    a = 1 + z(2)
    assert arith("add", a, a) == 2 * a
    assert arith("sub", a, a) == Series.zero(2)
    assert arith("pow", a, 2) == Series([1, 2, 1], 2)
    assert arith("scale", a, Fraction(1, 2)) == Series([Fraction(1, 2), Fraction(1, 2)], 2)
    with pytest.raises(ValueError):
        arith("div", a, a)
    with pytest.raises(ValueError):
        a ** -1


def test_mixed_orders_truncate_to_smaller():
    s = (1 + z(5)) * (1 + z(2))
    assert s.order == 2
    assert s == Series([1, 2, 1], 2)


def test_mismatched_variables_rejected():
    with pytest.raises(ValueError):
        z(2) + Series.gen(2, "t")


def test_exp_examples():
    assert exp_series(Series.zero(3)) == Series.const(1, 3)
    assert exp_series(z(3)) == Series([1, 1, Fraction(1, 2), Fraction(1, 6)], 3)
    assert exp_series(z(2) * mono(p={1: 1})) == Series([1, mono(p={1: 1}), mono(Fraction(1, 2), p={1: 2})], 2)
    with pytest.raises(ValueError):
        exp_series(1 + z(2))


def test_operator_examples():
    assert z_ddz(z(3) ** 3) == 3 * z(3) ** 3
    a = Series([0, mono(u=2, p={2: 1})], 2)
    assert u_ddu(a) == 2 * a
    b = Series([0, 0, mono(p={1: 1, 2: 1})], 3)
    assert sum_p_ddp(b) == 2 * b
    assert apply_operator("sum_p_ddp", b) == 2 * b
    assert apply_operator("p_ddp", b, k=2) == Series([0, 0, mono(p={1: 1})], 3)
    assert ddz(z(3) ** 2) == Series([0, 2], 2)
    assert ddx(Series([mono(3, x=2)], 0)) == Series([mono(6, x=1)], 0)
    with pytest.raises(ValueError):
        apply_operator("d_dy", b)
    with pytest.raises(ValueError):
        apply_operator("p_ddp", b)


def test_coeff_examples():
    assert coeff(1 + 2 * z(1), 1) == PolyCoeff.const(2)
    assert coeff(exp_series(z(3)), 3, Monomial()) == Fraction(1, 6)
    sq = (X + z(2) * UP1) ** 2
    assert coeff(sq, 2, Monomial.make(u=2, p={1: 2})) == 1
    assert coeff(sq, 2, Monomial.make(u=1)) == 0


def test_coeff_beyond_order_is_an_error_not_zero():
    with pytest.raises(TruncationError):
        coeff(z(2), 3)
    with pytest.raises(TruncationError):
        z(2).truncate(4)


def test_compose_examples():
    assert compose_poly([1], z(3)) == z(3)
    a = z(3) + z(3) ** 2
    assert compose_poly([UP1], a) == a * UP1
    assert compose_poly([0, 1], a) == Series([0, 0, 1, 2], 3)
    with pytest.raises(ValueError):
        compose_poly([1], 1 + z(3))


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == Series.zero(3)


@settings(max_examples=40, deadline=None)
@given(series())
def test_coefficient_operators_commute(a):
    assert ddx(u_ddu(a)) == u_ddu(ddx(a))
    for op in (ddx, u_ddu, sum_p_ddp, lambda s: p_ddp(2, s)):
        assert op(z_ddz(a)) == z_ddz(op(a))


@settings(max_examples=30, deadline=None)
@given(series(constant=False), series(constant=False))
def test_exp_of_sum(a, b):
    assert exp_series(a + b) == exp_series(a) * exp_series(b)


@settings(max_examples=40, deadline=None)
@given(series(), series())
def test_leibniz(a, b):
    assert z_ddz(a * b) == z_ddz(a) * b + a * z_ddz(b)


@settings(max_examples=30, deadline=None)
@given(series(), st.integers(0, 5))
def test_pow_matches_repeated_multiplication(a, k):
    expected = Series.const(1, 3)
    for _ in range(k):
        expected = expected * a
    assert a ** k == expected


@settings(max_examples=30, deadline=None)
@given(series())
def test_json_round_trip(a):
    doc = json.loads(json.dumps(series_to_json(a)))
    assert series_from_json(doc) == a


def test_json_shape():
    doc = series_to_json(Series([0, mono(Fraction(1, 2), u=1, x=2, p={2: 1})], 1))
    assert doc == {"var": "z", "order": 1, "coeffs": [[], [{"u": 1, "x": 2, "p": {"2": 1}, "q": "1/2"}]]}


def test_polycoeff_stores_no_zeros():
    a = mono(u=1) + mono(-1, u=1)
    assert a.is_zero() and a.terms == {}
    assert PolyCoeff({Monomial(): 0}).terms == {}
    with pytest.raises(ValueError):
        Monomial.make(u=-1)
