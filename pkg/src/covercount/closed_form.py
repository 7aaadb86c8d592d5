"""Product formulas for the genus-0 cover counts H_alpha and G_alpha(m)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .partitions import Partition, class_size


@dataclass(frozen=True)
class CountResult:
    kind: str  # "H", "G" or "BalancedTrees"
    alpha: Partition
    value: int
    m: int | None = None

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind, "alpha": list(self.alpha.parts)}
        if self.m is not None:
            doc["m"] = self.m
        doc["value"] = str(self.value)
        return doc


def _integral(q: Fraction, what: str) -> int:
    if q.denominator != 1 or q < 0:
        raise ArithmeticError(f"{what} evaluated to {q}, expected a nonnegative integer")
    return q.numerator


def h_value(alpha: Partition) -> int:
    """Number of minimal transitive factorizations into transpositions."""
    n, l = alpha.n, alpha.l
    if n < 1:
        raise ValueError("alpha must be a partition of a positive integer")
    q = Fraction(n) ** (l - 3) * factorial(n + l - 2)
    for i, di in alpha.d.items():
        q *= Fraction(i ** i, factorial(i - 1)) ** di
    return _integral(q, f"H_{alpha.parts}")


def g_value(alpha: Partition, m: int) -> int:
    """Number of minimal transitive factorizations into m arbitrary factors (m >= 2)."""
    if m < 2:
        raise ValueError("the product formula for G_alpha(m) needs m >= 2")
    n, l = alpha.n, alpha.l
    if n < 1:
        raise ValueError("alpha must be a partition of a positive integer")
    q = Fraction(m * factorial((m - 1) * n - 1), factorial((m - 1) * n - l + 2))
    for i, di in alpha.d.items():
        q *= (i * comb(m * i - 1, i)) ** di
    return _integral(q, f"G_{alpha.parts}({m})")


def balanced_value(alpha: Partition, m: int) -> int:
    """Predicted number of balanced planted m-Eulerian trees of type alpha."""
    q = Fraction(class_size(alpha) * g_value(alpha, m), factorial(alpha.n - 1))
    return _integral(q, f"balanced tree count for {alpha.parts}, m={m}")


def h_alpha(alpha: Partition) -> CountResult:
    return CountResult("H", alpha, h_value(alpha))


def g_alpha(alpha: Partition, m: int) -> CountResult:
    return CountResult("G", alpha, g_value(alpha, m), m)


def balanced_tree_prediction(alpha: Partition, m: int) -> CountResult:
    return CountResult("BalancedTrees", alpha, balanced_value(alpha, m), m)
