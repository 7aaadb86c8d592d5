"""Partitions, permutations and Riemann-Hurwitz bookkeeping.

Partitions are kept weakly decreasing; permutations act on ``{1, ..., n}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...]
    d: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"parts must be positive integers: {parts!r}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts!r}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "d", dict(Counter(parts)))

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts given in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the ``"3,1,1"`` text form (any order, whitespace tolerated)."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            parts = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise ValueError(f"bad partition text {text!r}") from None
        return cls.of(parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    >>> [str(p) for p in partitions_of(4)]
    ['4', '3,1', '2,2', '2,1,1', '1,1,1,1']
    """
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


def class_size(alpha: Partition) -> int:
    """Size of the conjugacy class of cycle type ``alpha`` in S_n."""
    denom = prod(i ** di * factorial(di) for i, di in alpha.d.items())
    return factorial(alpha.n) // denom


def c_alpha(alpha: Partition, m: int) -> int:
    """Total number of factor cycles in a genus-0 factorization into m factors."""
    return (m - 1) * alpha.n - alpha.l + 2


def r_alpha(alpha: Partition) -> int:
    """Number of transpositions in a minimal transitive factorization."""
    return alpha.n + alpha.l - 2


def genus_of(alpha: Partition, factor_types: Sequence[Partition]) -> Fraction:
    """Genus forced by Riemann-Hurwitz for target type ``alpha`` and the factor types.

    Returned as a Fraction; half-integers and negatives are possible for
    inconsistent input and are left to the caller.
    """
    n = alpha.n
    if any(t.n != n for t in factor_types):
        raise ValueError("all partitions must have the same size")
    total = (n - alpha.l) + sum(n - t.l for t in factor_types)
    return Fraction(total - 2 * n + 2, 2)


class Permutation:
    """A permutation of ``{1, ..., n}`` stored by its images.

    ``(p * q)(j) = p(q(j))``: the right factor acts first.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images!r}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(images)

    @classmethod
    def canonical(cls, alpha: Partition) -> "Permutation":
        """The fixed representative of type ``alpha``: consecutive cycles, largest first."""
        cycles, start = [], 1
        for part in alpha.parts:
            cycles.append(list(range(start, start + part)))
            start += part
        return cls.from_cycles(alpha.n, cycles)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, img in enumerate(self.images, start=1):
            inv[img - 1] = j
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j - 1]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def cycle_type(pi: Permutation) -> Partition:
    return Partition.of(len(c) for c in pi.cycles())
