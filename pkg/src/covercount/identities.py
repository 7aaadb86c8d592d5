"""Generating series built from the closed forms, and coefficientwise checks of
the partial differential equations and Lagrangian identities they satisfy.

Each identity is evaluated as two :class:`Series` truncated at the same order
and compared exactly.  A failing comparison reports the lowest z-degree where
the sides differ and, within it, the least monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable

from .closed_form import g_value, h_value
from .lagrange import G_kernel, H_kernel, build_branch_poly, derivative_coeffs, lagrange_coeff, solve_fixed_point
from .partitions import Partition, c_alpha, class_size, partitions_of
from .polyseries import (
    Monomial,
    PolyCoeff,
    Series,
    compose_poly,
    ddx,
    ddz,
    p_ddp,
    sum_p_ddp,
    u_ddu,
    x_ddx,
    z_ddz,
)

G_FAMILY = ("MAIN1", "MAIN2", "GAW", "RECG", "EULER_G", "TTOG", "RECT", "DEFV", "VAW", "WLISTS")
H_FAMILY = ("PROP1", "PROP2", "PROP3", "KDV", "KDV2", "EULER_H")
IDENTITIES = G_FAMILY + H_FAMILY
SERIES_TAGS = ("G", "H", "Hhat", "T", "v", "w", "s", "Aw", "Bs")
M_SERIES = ("G", "T", "v", "w", "Aw")

GValues = Callable[[Partition, int], int]


def _p_alpha(alpha: Partition) -> dict[int, int]:
    return dict(alpha.d)


def _series_from_terms(N: int, term: Callable[[Partition], tuple[Fraction, Monomial] | None]) -> Series:
    coeffs = [PolyCoeff()]
    for n in range(1, N + 1):
        terms: dict[Monomial, Fraction] = {}
        for alpha in partitions_of(n):
            got = term(alpha)
            if got is not None:
                q, mono = got
                terms[mono] = terms.get(mono, 0) + q
        coeffs.append(PolyCoeff(terms))
    return Series(coeffs, N)


def build_G(m: int, N: int, g: GValues = g_value) -> Series:
    """``sum G_alpha(m) z^n/n! |C_alpha| u^l p_alpha x^c(alpha)``."""
    return _series_from_terms(N, lambda a: (
        Fraction(g(a, m) * class_size(a), factorial(a.n)),
        Monomial.make(a.l, c_alpha(a, m), _p_alpha(a)),
    ))


def tree_weight(alpha: Partition, m: int, g: GValues = g_value) -> Fraction:
    """``T_alpha(m) = |C_alpha| G_alpha(m) / (m (n-1)!)``; not always an integer."""
    return Fraction(class_size(alpha) * g(alpha, m), m * factorial(alpha.n - 1))


def build_T(m: int, N: int, g: GValues = g_value) -> Series:
    """Tree series, coefficient of ``z^(n-1)`` per alpha, built directly from T_alpha."""
    coeffs = [PolyCoeff() for _ in range(N + 1)]
    for n in range(1, N + 2):
        terms: dict[Monomial, Fraction] = {}
        for a in partitions_of(n):
            terms[Monomial.make(a.l, c_alpha(a, m), _p_alpha(a))] = tree_weight(a, m, g)
        coeffs[n - 1] = PolyCoeff(terms)
    return Series(coeffs, N)


def build_v(m: int, N: int, g: GValues = g_value) -> Series:
    """Pseudo-tree series: ``v_alpha = (m-1) c(alpha) T_alpha`` at ``z^n x^(c-1)``."""
    return _series_from_terms(N, lambda a: (
        (m - 1) * c_alpha(a, m) * tree_weight(a, m, g),
        Monomial.make(a.l, c_alpha(a, m) - 1, _p_alpha(a)),
    ))


def build_H(N: int) -> Series:
    return _series_from_terms(N, lambda a: (
        Fraction(h_value(a) * class_size(a), factorial(a.n) * factorial(a.n + a.l - 2)),
        Monomial.make(0, 0, _p_alpha(a)),
    ))


def build_Hhat(N: int, literal: bool = False) -> Series:
    """H with every ``p_i`` replaced by ``u p_i``.

    ``literal=True`` uses the denominator ``(n - l + 2)!`` in place of
    ``(n + l - 2)!``; that variant does not satisfy KDV2 and is kept only so
    the mismatch can be demonstrated.
    """
    def term(a: Partition):
        fact = factorial(a.n - a.l + 2) if literal else factorial(a.n + a.l - 2)
        return (
            Fraction(h_value(a) * class_size(a), factorial(a.n) * fact),
            Monomial.make(a.l, 0, _p_alpha(a)),
        )

    return _series_from_terms(N, term)


def build_w(m: int, N: int) -> Series:
    return solve_fixed_point(G_kernel(m, N))


def build_s(N: int) -> Series:
    return solve_fixed_point(H_kernel(N))


def build_Aw(m: int, N: int) -> Series:
    return compose_poly(build_branch_poly("A", N, m), build_w(m, N)) if N >= 1 else Series.zero(N)


def build_Bs(N: int) -> Series:
    return compose_poly(build_branch_poly("B", N), build_s(N)) if N >= 1 else Series.zero(N)


def build_series(tag: str, N: int, m: int | None = None, g: GValues = g_value) -> Series:
    if tag not in SERIES_TAGS:
        raise ValueError(f"unknown series {tag!r}")
    if N < 0:
        raise ValueError("order must be nonnegative")
    if tag in M_SERIES and (m is None or m < 2):
        raise ValueError(f"series {tag} needs m >= 2")
    if tag == "G":
        return build_G(m, N, g)
    if tag == "T":
        return build_T(m, N, g)
    if tag == "v":
        return build_v(m, N, g)
    if tag == "w":
        return build_w(m, N)
    if tag == "Aw":
        return build_Aw(m, N)
    if tag == "H":
        return build_H(N)
    if tag == "Hhat":
        return build_Hhat(N)
    if tag == "s":
        return build_s(N)
    return build_Bs(N)


@dataclass(frozen=True)
class Discrepancy:
    degree: int
    monomial: Monomial
    lhs: Fraction
    rhs: Fraction
    k: int | None = None  # PROP3 only

    def to_json(self) -> dict:
        doc = {
            "degree": self.degree,
            "monomial": str(self.monomial),
            "lhs": f"{self.lhs.numerator}/{self.lhs.denominator}",
            "rhs": f"{self.rhs.numerator}/{self.rhs.denominator}",
        }
        if self.k is not None:
            doc["k"] = self.k
        return doc


@dataclass(frozen=True)
class VerifyReport:
    identity: str
    order: int
    m: int | None = None
    first_discrepancy: Discrepancy | None = None

    @property
    def status(self) -> str:
        return "pass" if self.first_discrepancy is None else "fail"

    @property
    def passed(self) -> bool:
        return self.first_discrepancy is None

    def to_json(self) -> dict:
        doc: dict = {"identity": self.identity}
        if self.m is not None:
            doc["m"] = self.m
        doc["order"] = self.order
        doc["status"] = self.status
        if self.first_discrepancy is not None:
            doc["first_discrepancy"] = self.first_discrepancy.to_json()
        return doc


def first_discrepancy(lhs: Series, rhs: Series, N: int) -> Discrepancy | None:
    lhs, rhs = lhs.truncate(N), rhs.truncate(N)
    for n in range(N + 1):
        a, b = lhs.coeffs[n], rhs.coeffs[n]
        if a == b:
            continue
        diff = a - b
        mono = min(diff.terms)
        return Discrepancy(n, mono, a.get(mono), b.get(mono))
    return None


def _sides(tag: str, m: int | None, N: int, g: GValues) -> list[tuple[Series, Series]]:
    """Left and right sides of the identity ``tag``, each known to order >= N."""
    if tag in G_FAMILY:
        r = Fraction(m, m - 1)
    if tag == "MAIN1":
        G = build_G(m, N, g)
        Aw = build_Aw(m, N)
        lhs = z_ddz((m - 1) * z_ddz(G) + G)
        rhs = Aw * PolyCoeff.mono(r, x=1) + Aw * Aw * (r / 2)
        return [(lhs, rhs)]
    if tag == "MAIN2":
        G = build_G(m, N, g)
        return [(z_ddz(ddx(G)), build_Aw(m, N) * r)]
    if tag == "GAW":
        G = build_G(m, N, g)
        phi = G_kernel(m, N)
        a_prime = derivative_coeffs(build_branch_poly("A", N, m))
        rhs = Series([PolyCoeff()] + [lagrange_coeff(phi, n, a_prime) * r for n in range(1, N + 1)], N)
        return [(z_ddz(ddx(G)), rhs)]
    if tag == "RECG":
        G = build_G(m, N, g)
        D = z_ddz(ddx(G))
        return [(z_ddz(u_ddu(G) - G) * (2 * m), D * D * (m - 1))]
    if tag == "EULER_G":
        G = build_G(m, N, g)
        return [(x_ddx(G), (m - 1) * z_ddz(G) - u_ddu(G) + 2 * G)]
    if tag == "TTOG":
        return [(build_T(m, N, g) * m, ddz(build_G(m, N + 1, g)))]
    if tag == "RECT":
        T = build_T(m, N, g)
        Tx = ddx(T)
        z = Series.gen(N)
        return [(2 * (u_ddu(T) - T), z * Tx * Tx * (m - 1))]
    if tag == "DEFV":
        T = build_T(m, N, g)
        return [(build_v(m, N, g), Series.gen(N) * ddx(T) * (m - 1))]
    if tag == "VAW":
        return [(build_v(m, N, g), build_Aw(m, N))]
    if tag == "WLISTS":
        v = build_v(m, N, g)
        rebuilt = Series.gen(N) * (v + PolyCoeff.mono(x=1)) ** (m - 1)
        return [(rebuilt, build_w(m, N))]
    if tag == "PROP1":
        H = build_H(N)
        return [(z_ddz(z_ddz(H)), build_Bs(N))]
    if tag == "PROP2":
        H = build_H(N)
        s, Bs = build_s(N), build_Bs(N)
        cs = [PolyCoeff.mono(Fraction(i ** (i - 1), factorial(i)), p={i: 1}) for i in range(1, N + 1)]
        return [(z_ddz(H), compose_poly(cs, s) - Bs * Bs / 2)]
    if tag == "PROP3":
        H = build_H(N)
        s = build_s(N)
        return [
            (z_ddz(p_ddp(k, H)), s ** k * Fraction(k ** (k - 1), factorial(k)))
            for k in range(1, N + 1)
        ]
    if tag == "KDV":
        H = build_H(N)
        D2 = z_ddz(z_ddz(H))
        return [(z_ddz(H), z_ddz(sum_p_ddp(H)) - D2 * D2 / 2)]
    if tag == "KDV2":
        Hh = build_Hhat(N)
        D2 = z_ddz(z_ddz(Hh))
        return [(z_ddz(Hh), z_ddz(u_ddu(Hh)) - D2 * D2 / 2)]
    if tag == "EULER_H":
        Hh = build_Hhat(N)
        return [(u_ddu(Hh), sum_p_ddp(Hh))]
    raise ValueError(f"unknown identity {tag!r}")


def verify(tag: str, N: int, m: int | None = None, g: GValues = g_value) -> VerifyReport:
    """Check identity ``tag`` exactly through ``z**N``.

    ``g`` supplies the G_alpha(m) values and exists so tests can inject a
    corrupted table.
    """
    if tag not in IDENTITIES:
        raise ValueError(f"unknown identity {tag!r}")
    if N < 0:
        raise ValueError("order must be nonnegative")
    if tag in G_FAMILY:
        if m is None:
            raise ValueError(f"{tag} needs m")
        if m < 2:
            raise ValueError(f"{tag} needs m >= 2")
    else:
        m = None
    worst = None
    for k, (lhs, rhs) in enumerate(_sides(tag, m, N, g), start=1):
        d = first_discrepancy(lhs, rhs, N)
        if d is None:
            continue
        if tag == "PROP3":
            d = Discrepancy(d.degree, d.monomial, d.lhs, d.rhs, k)
        if worst is None or (d.degree, d.monomial) < (worst.degree, worst.monomial):
            worst = d
    return VerifyReport(tag, N, m, worst)


def verify_all(N: int, ms: tuple[int, ...] = (2, 3, 4)) -> list[VerifyReport]:
    reports = [verify(tag, N, m) for m in ms for tag in G_FAMILY]
    reports += [verify(tag, N) for tag in H_FAMILY]
    return reports
