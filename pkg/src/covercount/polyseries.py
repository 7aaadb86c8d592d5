"""Truncated power series with exact polynomial coefficients.

A :class:`Series` is a power series in one distinguished variable (``z`` or
``lambda``) truncated at a fixed order.  Its coefficients are :class:`PolyCoeff`
values: sparse polynomials in ``u``, ``x`` and ``p_1, p_2, ...`` over the
rationals.  Everything is exact; there is no floating point mode.

Binary operations between series of different orders truncate to the smaller
order.  Plain ints, Fractions and PolyCoeffs are promoted to constant series.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence, Union


class TruncationError(IndexError):
    """Asked for a coefficient beyond the truncation order."""


class Monomial(NamedTuple):
    """``u**u * x**x * prod(p_i**e)``; ``p`` holds sorted ``(i, e)`` pairs with e > 0."""

    u: int = 0
    x: int = 0
    p: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, u: int = 0, x: int = 0, p: Mapping[int, int] | None = None) -> "Monomial":
        pairs = tuple(sorted((i, e) for i, e in (p or {}).items() if e))
        if u < 0 or x < 0 or any(i < 1 or e < 0 for i, e in pairs):
            raise ValueError("exponents must be nonnegative and p indices positive")
        return cls(u, x, pairs)

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        if not self.p:
            p = other.p
        elif not other.p:
            p = self.p
        else:
            merged = dict(self.p)
            for i, e in other.p:
                merged[i] = merged.get(i, 0) + e
            p = tuple(sorted(merged.items()))
        return Monomial(self.u + other.u, self.x + other.x, p)

    def p_exp(self, k: int) -> int:
        for i, e in self.p:
            if i == k:
                return e
        return 0

    def p_degree(self) -> int:
        return sum(e for _, e in self.p)

    def __str__(self) -> str:
        bits = []
        if self.u:
            bits.append("u" if self.u == 1 else f"u^{self.u}")
        if self.x:
            bits.append("x" if self.x == 1 else f"x^{self.x}")
        for i, e in self.p:
            bits.append(f"p{i}" if e == 1 else f"p{i}^{e}")
        return "*".join(bits) or "1"


ONE = Monomial()
Scalar = Union[int, Fraction]


class PolyCoeff:
    """Sparse polynomial in u, x, p_i with Fraction coefficients; zeros are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, q in terms.items():
                if q:
                    self.terms[mono] = Fraction(q)

    @classmethod
    def const(cls, q: Scalar) -> "PolyCoeff":
        return cls({ONE: q})

    @classmethod
    def mono(cls, q: Scalar = 1, u: int = 0, x: int = 0, p: Mapping[int, int] | None = None) -> "PolyCoeff":
        return cls({Monomial.make(u, x, p): q})

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "PolyCoeff":
        out = cls.__new__(cls)
        out.terms = terms
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyCoeff.const(other)
        return isinstance(other, PolyCoeff) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "PolyCoeff | Scalar") -> "PolyCoeff":
        if not isinstance(other, (PolyCoeff, int, Fraction)):
            return NotImplemented
        other = _as_poly(other)
        out = dict(self.terms)
        for mono, q in other.terms.items():
            s = out.get(mono, 0) + q
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return PolyCoeff._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyCoeff":
        return PolyCoeff._raw({mono: -q for mono, q in self.terms.items()})

    def __sub__(self, other: "PolyCoeff | Scalar") -> "PolyCoeff":
        if not isinstance(other, (PolyCoeff, int, Fraction)):
            return NotImplemented
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "PolyCoeff":
        return _as_poly(other) - self

    def __mul__(self, other: "PolyCoeff | Scalar") -> "PolyCoeff":
        if isinstance(other, (int, Fraction)):
            if not other:
                return PolyCoeff()
            return PolyCoeff._raw({mono: q * other for mono, q in self.terms.items()})
        if not isinstance(other, PolyCoeff):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, q1 in self.terms.items():
            for m2, q2 in other.terms.items():
                mono = m1 * m2
                out[mono] = out.get(mono, 0) + q1 * q2
        return PolyCoeff._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def map_terms(self, fn: Callable[[Monomial, Fraction], Iterable[tuple[Monomial, Fraction]]]) -> "PolyCoeff":
        out: dict[Monomial, Fraction] = {}
        for mono, q in self.terms.items():
            for m2, q2 in fn(mono, q):
                out[m2] = out.get(m2, 0) + q2
        return PolyCoeff._raw({k: v for k, v in out.items() if v})

    def get(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def sorted_items(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{q}*{mono}" for mono, q in self.sorted_items())


def _as_poly(v: "PolyCoeff | Scalar") -> PolyCoeff:
    if isinstance(v, PolyCoeff):
        return v
    if isinstance(v, (int, Fraction)):
        return PolyCoeff.const(v)
    raise TypeError(f"cannot use {type(v).__name__} as a coefficient")


ZERO_POLY = PolyCoeff()


class Series:
    """Power series ``sum_k coeffs[k] * var**k`` known exactly up to ``order``."""

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, coeffs: Sequence[PolyCoeff | Scalar], order: int | None = None, var: str = "z"):
        coeffs = [_as_poly(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [ZERO_POLY] * (order + 1 - len(coeffs))
        self.var = var
        self.order = order
        self.coeffs: list[PolyCoeff] = coeffs

    @classmethod
    def zero(cls, order: int, var: str = "z") -> "Series":
        return cls([], order, var)

    @classmethod
    def const(cls, c: PolyCoeff | Scalar, order: int, var: str = "z") -> "Series":
        return cls([c], order, var)

    @classmethod
    def gen(cls, order: int, var: str = "z") -> "Series":
        """The distinguished variable itself."""
        return cls([0, 1], order, var)

    def _coerce(self, other: "Series | PolyCoeff | Scalar") -> "Series":
        if isinstance(other, Series):
            if other.var != self.var:
                raise ValueError(f"series variables differ: {self.var} vs {other.var}")
            return other
        return Series.const(_as_poly(other), self.order, self.var)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise TruncationError(f"cannot extend a series known to order {self.order} to {order}")
        return Series(self.coeffs[: order + 1], order, self.var)

    def __add__(self, other: "Series | PolyCoeff | Scalar") -> "Series":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Series([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n, self.var)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other: "Series | PolyCoeff | Scalar") -> "Series":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "PolyCoeff | Scalar") -> "Series":
        return self._coerce(other) - self

    def __mul__(self, other: "Series | PolyCoeff | Scalar") -> "Series":
        if isinstance(other, (int, Fraction, PolyCoeff)):
            return Series([c * other for c in self.coeffs], self.order, self.var)
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = [ZERO_POLY] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(out, n, self.var)

    __rmul__ = __mul__

    def __truediv__(self, q: Scalar) -> "Series":
        return self * (Fraction(1) / Fraction(q))

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = Series.const(1, self.order, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Series)
            and self.var == other.var
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.var, self.order, tuple(self.coeffs)))

    def __getitem__(self, n: int) -> PolyCoeff:
        return coeff(self, n)

    def __repr__(self) -> str:
        terms = [f"({c})*{self.var}^{k}" for k, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O({self.var}^{self.order + 1})"


def arith(op: str, a: Series, b: "Series | PolyCoeff | Scalar | None" = None) -> Series:
    """Dispatch form of the series arithmetic: add, sub, mul, pow, scale."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    if op == "scale":
        return a * Fraction(b)
    raise ValueError(f"unknown op {op!r}")


def coeff(a: Series, n: int, mono: Monomial | None = None) -> PolyCoeff | Fraction:
    """``[var**n] a``, or the rational coefficient of ``mono`` inside it."""
    if n < 0:
        raise ValueError("negative degree")
    if n > a.order:
        raise TruncationError(f"degree {n} exceeds truncation order {a.order}")
    c = a.coeffs[n]
    return c if mono is None else c.get(mono)


def exp_series(a: Series) -> Series:
    if a.coeffs[0]:
        raise ValueError("exp_series needs a zero constant term")
    result = Series.const(1, a.order, a.var)
    term = result
    for k in range(1, a.order + 1):
        term = term * a / k
        result = result + term
    return result


def compose_poly(cs: Sequence[PolyCoeff | Scalar], a: Series) -> Series:
    """``sum_i cs[i-1] * a**i`` for a coefficient list ``c_1, c_2, ...``."""
    if a.coeffs[0]:
        raise ValueError("compose_poly needs a zero constant term")
    result = Series.zero(a.order, a.var)
    power = Series.const(1, a.order, a.var)
    for i, c in enumerate(cs, start=1):
        if i > a.order:
            break  # a**i vanishes below the truncation
        power = power * a
        if c:
            result = result + power * _as_poly(c)
    return result


# Differential operators ------------------------------------------------------

def _on_coeffs(a: Series, fn: Callable[[Monomial, Fraction], Iterable[tuple[Monomial, Fraction]]]) -> Series:
    return Series([c.map_terms(fn) for c in a.coeffs], a.order, a.var)


def z_ddz(a: Series) -> Series:
    return Series([c * k for k, c in enumerate(a.coeffs)], a.order, a.var)


def ddz(a: Series) -> Series:
    """Derivative in the distinguished variable; the order drops by one."""
    if a.order == 0:
        raise TruncationError("cannot differentiate a series known only to order 0")
    return Series([c * k for k, c in enumerate(a.coeffs)][1:], a.order - 1, a.var)


def ddx(a: Series) -> Series:
    return _on_coeffs(a, lambda m, q: [(m._replace(x=m.x - 1), q * m.x)] if m.x else [])


def u_ddu(a: Series) -> Series:
    return _on_coeffs(a, lambda m, q: [(m, q * m.u)] if m.u else [])


def x_ddx(a: Series) -> Series:
    return _on_coeffs(a, lambda m, q: [(m, q * m.x)] if m.x else [])


def _drop_p(m: Monomial, k: int) -> Monomial:
    p = tuple((i, e - 1 if i == k else e) for i, e in m.p)
    return m._replace(p=tuple(pe for pe in p if pe[1]))


def p_ddp(k: int, a: Series) -> Series:
    """Plain partial derivative d/dp_k."""
    if k < 1:
        raise ValueError("p index must be positive")

    def fn(m: Monomial, q: Fraction):
        e = m.p_exp(k)
        return [(_drop_p(m, k), q * e)] if e else []

    return _on_coeffs(a, fn)


def sum_p_ddp(a: Series) -> Series:
    """The Euler operator ``sum_k p_k d/dp_k`` (total p-degree)."""
    return _on_coeffs(a, lambda m, q: [(m, q * m.p_degree())] if m.p else [])


OPERATORS: dict[str, Callable[[Series], Series]] = {
    "z_ddz": z_ddz,
    "ddz": ddz,
    "ddx": ddx,
    "x_ddx": x_ddx,
    "u_ddu": u_ddu,
    "sum_p_ddp": sum_p_ddp,
}


def apply_operator(op_tag: str, a: Series, k: int | None = None) -> Series:
    if op_tag == "p_ddp":
        if k is None:
            raise ValueError("p_ddp needs an index k")
        return p_ddp(k, a)
    try:
        return OPERATORS[op_tag](a)
    except KeyError:
        raise ValueError(f"unknown operator {op_tag!r}") from None


# JSON form -------------------------------------------------------------------

def _q_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def poly_to_json(c: PolyCoeff) -> list[dict]:
    return [
        {"u": m.u, "x": m.x, "p": {str(i): e for i, e in m.p}, "q": _q_str(q)}
        for m, q in c.sorted_items()
    ]


def poly_from_json(items: Sequence[Mapping]) -> PolyCoeff:
    terms = {}
    for t in items:
        mono = Monomial.make(t.get("u", 0), t.get("x", 0), {int(i): e for i, e in t.get("p", {}).items()})
        terms[mono] = terms.get(mono, 0) + Fraction(t["q"])
    return PolyCoeff(terms)


def series_to_json(a: Series) -> dict:
    return {"var": a.var, "order": a.order, "coeffs": [poly_to_json(c) for c in a.coeffs]}


def series_from_json(doc: Mapping) -> Series:
    return Series([poly_from_json(c) for c in doc["coeffs"]], doc["order"], doc["var"])
