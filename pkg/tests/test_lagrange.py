from fractions import Fraction

import pytest

from covercount.lagrange import (
    G_kernel,
    H_kernel,
    PhiSpec,
    build_branch_poly,
    derivative_coeffs,
    lagrange_coeff,
    solve_fixed_point,
)
from covercount.polyseries import PolyCoeff, Series, TruncationError, compose_poly


def up(q, i):
    return PolyCoeff.mono(q, u=1, p={i: 1})


def test_branch_poly_A():
    assert build_branch_poly("A", 3, m=2) == [up(1, 1), up(3, 2), up(10, 3)]
    assert all(c.is_zero() for c in build_branch_poly("A", 5, m=1))


def test_branch_poly_B():
    assert build_branch_poly("B", 3) == [
        PolyCoeff.mono(1, p={1: 1}),
        PolyCoeff.mono(2, p={2: 1}),
        PolyCoeff.mono(Fraction(9, 2), p={3: 1}),
    ]
    with pytest.raises(ValueError):
        build_branch_poly("C", 3)


def test_solve_examples():
    z = Series.gen(2)
    assert solve_fixed_point(H_kernel(2)) == z + z * z * PolyCoeff.mono(p={1: 1})
    assert solve_fixed_point(G_kernel(2, 2)) == z * PolyCoeff.mono(x=1) + z * z * PolyCoeff.mono(u=1, x=1, p={1: 1})
    assert solve_fixed_point(H_kernel(0)) == Series.zero(0)
    assert solve_fixed_point(G_kernel(3, 0)) == Series.zero(0)


def test_lagrange_examples():
    assert lagrange_coeff(H_kernel(2), 2) == PolyCoeff.mono(p={1: 1})
    assert lagrange_coeff(G_kernel(2, 2), 2) == PolyCoeff.mono(u=1, x=1, p={1: 1})
    # f' = 0 beyond degree 0 and phi = 1 + ...: nothing at t^(n-1) when f' = t^5
    assert lagrange_coeff(H_kernel(3), 3, [0, 0, 0, 0, 0, 1]).is_zero()


def test_lagrange_truncation_overflow():
    with pytest.raises(TruncationError):
        lagrange_coeff(H_kernel(3), 4)


def test_kernel_validation():
    with pytest.raises(ValueError):
        PhiSpec("G", 3, m=1)
    with pytest.raises(ValueError):
        PhiSpec("Q", 3)


@pytest.mark.parametrize("phi", [H_kernel(8)] + [G_kernel(m, 6) for m in (2, 3, 4)], ids=str)
def test_fixed_point_equals_lagrange(phi):
    f = solve_fixed_point(phi)
    for n in range(1, phi.order + 1):
        assert f.coeffs[n] == lagrange_coeff(phi, n)


@pytest.mark.parametrize("phi", [H_kernel(7)] + [G_kernel(m, 5) for m in (2, 3, 5)], ids=str)
def test_solution_satisfies_equation(phi):
    f = solve_fixed_point(phi)
    assert f - Series.gen(phi.order) * phi.apply(f) == Series.zero(phi.order)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_A_of_w_two_ways(m):
    N = 6
    phi = G_kernel(m, N)
    A = build_branch_poly("A", N, m)
    Aw = compose_poly(A, solve_fixed_point(phi))
    dA = derivative_coeffs(A)
    for n in range(1, N + 1):
        assert Aw.coeffs[n] == lagrange_coeff(phi, n, dA)
