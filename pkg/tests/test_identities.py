from fractions import Fraction

import pytest

from covercount.closed_form import g_value
from covercount.identities import (
    G_FAMILY,
    H_FAMILY,
    SERIES_TAGS,
    build_Hhat,
    build_series,
    first_discrepancy,
    verify,
)
from covercount.partitions import Partition, partitions_of
from covercount.polyseries import Monomial, PolyCoeff, Series, TruncationError, coeff, u_ddu, z_ddz

P = Partition.of


def test_G_first_coefficient():
    assert coeff(build_series("G", 3, m=2), 1) == PolyCoeff.mono(u=1, x=2, p={1: 1})


def test_H_first_coefficient():
    assert coeff(build_series("H", 3), 1) == PolyCoeff.mono(p={1: 1})


def test_Hhat_second_coefficient():
    # H_(2) = 1, |C_(2)| = 1, 1/2!; the factorial is (n + l - 2)! = 1!
    assert coeff(build_series("Hhat", 3), 2, Monomial.make(u=1, p={2: 1})) == Fraction(1, 2)
    # with (n - l + 2)! = 3! instead the coefficient would be 1/12
    assert coeff(build_Hhat(3, literal=True), 2, Monomial.make(u=1, p={2: 1})) == Fraction(1, 12)


def test_literal_Hhat_breaks_kdv2():
    Hh = build_Hhat(4, literal=True)
    D2 = z_ddz(z_ddz(Hh))
    d = first_discrepancy(z_ddz(Hh), z_ddz(u_ddu(Hh)) - D2 * D2 / 2, 4)
    assert d is not None and d.degree == 2
    assert (d.lhs, d.rhs) == (Fraction(1, 2), Fraction(7, 8))


@pytest.mark.parametrize("tag", [t for t in SERIES_TAGS if t != "T"])
def test_constant_terms_vanish(tag):
    s = build_series(tag, 4, m=3)
    assert s.coeffs[0].is_zero()
    with pytest.raises(TruncationError):
        coeff(s, 5)


def test_T_counts_trees_from_z0():
    # T_(1)(m) = 1 * 1 / (m * 0!) at z^0 x^m
    assert coeff(build_series("T", 2, m=3), 0) == PolyCoeff.mono(Fraction(1, 3), u=1, x=3, p={1: 1})


def test_series_needs_m():
    with pytest.raises(ValueError):
        build_series("G", 3)
    with pytest.raises(ValueError):
        build_series("w", 3, m=1)
    with pytest.raises(ValueError):
        build_series("Z", 3)


def test_H_matches_hand_expansion_to_z2():
    H = build_series("H", 2)
    # (2): H=1, |C|=1 -> 1/(2! 1!) ; (1,1): H=1, |C|=1 -> 1/(2! 2!)
    assert H.coeffs[2] == PolyCoeff.mono(Fraction(1, 2), p={2: 1}) + PolyCoeff.mono(Fraction(1, 4), p={1: 2})


def test_recg_trivially_passes_at_order_one():
    assert verify("RECG", 1, m=2).passed


def test_prop1_at_order_two():
    assert verify("PROP1", 2).passed


def test_euler_h_at_order_eight():
    r = verify("EULER_H", 8)
    assert r.passed and r.first_discrepancy is None


@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("tag", G_FAMILY)
def test_g_family(tag, m):
    assert verify(tag, 5, m).passed


@pytest.mark.parametrize("tag", H_FAMILY)
def test_h_family(tag):
    assert verify(tag, 7).passed


def test_verify_argument_errors():
    with pytest.raises(ValueError):
        verify("NOPE", 3)
    with pytest.raises(ValueError):
        verify("RECG", 3)
    with pytest.raises(ValueError):
        verify("RECG", 3, m=1)


def _bump(target):
    return lambda a, m: g_value(a, m) + (a == target)


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("alpha", [a for n in range(1, 5) for a in partitions_of(n)], ids=str)
def test_corrupted_G_is_caught_at_its_degree(alpha, m):
    reports = {tag: verify(tag, 4, m, g=_bump(alpha)) for tag in ("RECG", "MAIN1", "MAIN2")}
    assert reports["MAIN2"].first_discrepancy.degree == alpha.n
    assert reports["MAIN1"].first_discrepancy.degree == alpha.n
    recg = reports["RECG"].first_discrepancy
    if alpha.l >= 2:
        assert recg.degree == alpha.n
    elif alpha.n < 4:
        # (u d/du - 1) kills one-part terms; the error shows up quadratically later
        assert recg is not None and recg.degree > alpha.n


def test_discrepancy_ordering():
    a = PolyCoeff.mono(1, u=2) + PolyCoeff.mono(1, x=1)
    lhs = Series([0, 0, a, 1], 3)
    rhs = Series([0, 0, PolyCoeff.mono(1, u=2), 2], 3)
    d = first_discrepancy(lhs, rhs, 3)
    assert (d.degree, d.monomial, d.lhs, d.rhs) == (2, Monomial.make(x=1), 1, 0)


def test_report_json():
    assert verify("KDV2", 8).to_json() == {"identity": "KDV2", "order": 8, "status": "pass"}
    bad = verify("MAIN2", 3, 2, g=_bump(P([2]))).to_json()
    assert bad["status"] == "fail"
    assert bad["first_discrepancy"]["degree"] == 2
