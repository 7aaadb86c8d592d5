"""Implicit series ``f = z * phi(f)`` and Lagrange coefficient extraction.

Two kernels are supported:

* ``G``: ``phi(t) = (x + A(t))**(m-1)`` with ``A(t) = sum_i C(mi-1, i) u p_i t**i``
* ``H``: ``phi(t) = exp(B(t))`` with ``B(t) = sum_i i**i / i! p_i t**i``

:func:`solve_fixed_point` iterates the defining equation; :func:`lagrange_coeff`
reads coefficients off ``f'(t) phi(t)**n`` instead.  The two are meant to check
each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .polyseries import (
    PolyCoeff,
    Series,
    TruncationError,
    compose_poly,
    exp_series,
)


def build_branch_poly(kind: str, order: int, m: int | None = None) -> list[PolyCoeff]:
    """Coefficients ``c_1..c_order`` of A (needs ``m``) or B."""
    if order < 1:
        raise ValueError("order must be at least 1")
    if kind == "A":
        if m is None or m < 1:
            raise ValueError("A needs m >= 1")
        # comb() is already 0 when i > m*i - 1, which covers m = 1
        return [PolyCoeff.mono(comb(m * i - 1, i), u=1, p={i: 1}) for i in range(1, order + 1)]
    if kind == "B":
        return [PolyCoeff.mono(Fraction(i ** i, factorial(i)), p={i: 1}) for i in range(1, order + 1)]
    raise ValueError(f"unknown branch polynomial {kind!r}")


def derivative_coeffs(cs: Sequence[PolyCoeff]) -> list[PolyCoeff]:
    """Coefficients ``d_0, d_1, ...`` of the derivative of ``sum_i cs[i-1] t**i``."""
    return [c * i for i, c in enumerate(cs, start=1)]


@dataclass(frozen=True)
class PhiSpec:
    kind: str  # "G" or "H"
    order: int
    m: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("G", "H"):
            raise ValueError(f"unknown kernel {self.kind!r}")
        if self.kind == "G" and (self.m is None or self.m < 2):
            raise ValueError("the G kernel needs m >= 2")
        if self.order < 0:
            raise ValueError("order must be nonnegative")

    def branch(self, order: int | None = None) -> list[PolyCoeff]:
        order = self.order if order is None else order
        if order < 1:
            return []
        return build_branch_poly("A" if self.kind == "G" else "B", order, self.m)

    def apply(self, f: Series) -> Series:
        """``phi(f)`` for a series ``f`` with zero constant term."""
        inner = compose_poly(self.branch(f.order), f) if f.order >= 1 else Series.zero(f.order, f.var)
        if self.kind == "G":
            return (inner + PolyCoeff.mono(x=1)) ** (self.m - 1)
        return exp_series(inner)


def G_kernel(m: int, order: int) -> PhiSpec:
    return PhiSpec("G", order, m)


def H_kernel(order: int) -> PhiSpec:
    return PhiSpec("H", order)


def solve_fixed_point(phi: PhiSpec, var: str = "z") -> Series:
    """The unique ``f`` with ``f = z * phi(f)`` up to ``phi.order``.

    Each pass fixes at least one more coefficient, so ``order + 1`` passes
    must reach a fixed point; anything else is a kernel bug.
    """
    N = phi.order
    z = Series.gen(N, var) if N >= 1 else Series.zero(N, var)
    f = Series.zero(N, var)
    for _ in range(N + 2):
        nxt = z * phi.apply(f)
        if nxt == f:
            return f
        f = nxt
    raise RuntimeError(f"fixed-point iteration for {phi} did not stabilise")


def lagrange_coeff(phi: PhiSpec, n: int, f_prime: Sequence[PolyCoeff] | Series | None = None) -> PolyCoeff:
    """``[z**n] f(w) = (1/n) [t**(n-1)] f'(t) phi(t)**n``.

    ``f_prime`` is the derivative of ``f`` given as a coefficient list
    ``d_0, d_1, ...`` or a Series in ``t``; the default ``f(t) = t`` has
    ``f' = 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > phi.order:
        raise TruncationError(f"coefficient {n} requested from a kernel built to order {phi.order}")
    deg = n - 1
    t = Series.gen(deg, "t") if deg >= 1 else Series.zero(deg, "t")
    phi_t = phi.apply(t)
    if f_prime is None:
        fp = Series.const(1, deg, "t")
    elif isinstance(f_prime, Series):
        if f_prime.order < deg:
            raise TruncationError(f"f' known to order {f_prime.order}, need {deg}")
        fp = Series(f_prime.coeffs, deg, "t")
    else:
        fp = Series(list(f_prime), deg, "t")
    return (fp * phi_t ** n).coeffs[deg] * Fraction(1, n)
