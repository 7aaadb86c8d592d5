"""Brute-force counts of minimal transitive factorizations in S_n.

Nothing here uses the product formulas.  The target is a fixed permutation of
the requested cycle type (:meth:`Permutation.canonical` unless another one is
passed in), and every ordered tuple of factors is accounted for.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator, Sequence

from .partitions import Partition, Permutation, c_alpha, cycle_type, partitions_of, r_alpha

MAX_TRANSPOSITION_N = 6
DEFAULT_BUDGET = 24 ** 2  # (n!)**(m-1) tuples: n <= 4 with m <= 3, n <= 3 with m <= 4


class BudgetExceeded(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


@dataclass(frozen=True)
class FactorizationCount:
    alpha: Partition
    mode: str  # "transpositions" or "arbitrary"
    count: int
    m: int | None = None
    genus: int = 0
    elapsed_ms: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        doc: dict = {"alpha": list(self.alpha.parts), "mode": self.mode}
        if self.m is not None:
            doc["m"] = self.m
        doc["count"] = str(self.count)
        doc["elapsed_ms"] = round(self.elapsed_ms, 3)
        return doc


class _DisjointSets:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def is_transitive(perms: Sequence[Permutation], n: int) -> bool:
    """Whether ``<perms>`` acts transitively on ``{1..n}`` (union-find over cycles)."""
    ds = _DisjointSets(n)
    for p in perms:
        for j in range(1, n + 1):
            ds.union(j, p(j))
    return all(ds.find(j) == 1 for j in range(1, n + 1))


def transpositions(n: int) -> list[Permutation]:
    return [Permutation.from_cycles(n, [(a, b)]) for a, b in combinations(range(1, n + 1), 2)]


def _apply_transposition(images: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    # images of (product * (a b)): the new transposition acts first
    out = list(images)
    out[a - 1], out[b - 1] = images[b - 1], images[a - 1]
    return tuple(out)


def _num_cycles(images: tuple[int, ...]) -> int:
    seen = [False] * (len(images) + 1)
    count = 0
    for start in range(1, len(images) + 1):
        if not seen[start]:
            count += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = images[j - 1]
    return count


def _merge_blocks(blocks: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    """Blocks are stored as ``block[j-1] = least element of j's block``."""
    ra, rb = blocks[a - 1], blocks[b - 1]
    if ra == rb:
        return blocks
    lo, hi = min(ra, rb), max(ra, rb)
    return tuple(lo if r == hi else r for r in blocks)


def count_factorizations_transpositions(
    alpha: Partition, target: Permutation | None = None, max_n: int = MAX_TRANSPOSITION_N
) -> FactorizationCount:
    """Ordered transposition tuples ``t_1 ... t_r = target`` generating a transitive group.

    Depth-first over the next transposition, carrying the running product and
    the orbit partition so far.  Identical ``(steps left, product, orbits)``
    states are counted once and reused, and branches whose cycle count cannot
    reach the target's in the remaining steps are cut.
    """
    n = alpha.n
    if n > max_n:
        pairs = n * (n - 1) // 2
        raise BudgetExceeded(
            f"n={n} exceeds max_n={max_n}; raw search space (n(n-1)/2)^r = {pairs}^{r_alpha(alpha)}"
        )
    started = time.perf_counter()
    target = target or Permutation.canonical(alpha)
    if cycle_type(target) != alpha:
        raise ValueError("target does not have cycle type alpha")
    r = r_alpha(alpha)
    goal, goal_cycles = target.images, alpha.l
    pairs = list(combinations(range(1, n + 1), 2))

    @lru_cache(maxsize=None)
    def dfs(left: int, images: tuple[int, ...], blocks: tuple[int, ...]) -> int:
        if left == 0:
            return int(images == goal and all(b == 1 for b in blocks))
        if abs(_num_cycles(images) - goal_cycles) > left:
            return 0
        total = 0
        for a, b in pairs:
            total += dfs(left - 1, _apply_transposition(images, a, b), _merge_blocks(blocks, a, b))
        return total

    count = dfs(r, tuple(range(1, n + 1)), tuple(range(1, n + 1)))
    dfs.cache_clear()
    return FactorizationCount(alpha, "transpositions", count, elapsed_ms=1000 * (time.perf_counter() - started))


def iter_transposition_factorizations(alpha: Partition, target: Permutation | None = None) -> Iterator[tuple[Permutation, ...]]:
    """Plain generator of every minimal transitive transposition factorization (small n only)."""
    n = alpha.n
    target = target or Permutation.canonical(alpha)
    taus = transpositions(n)
    for tup in product(taus, repeat=r_alpha(alpha)):
        prod_ = Permutation.identity(n)
        for t in tup:
            prod_ = prod_ * t
        if prod_ == target and is_transitive(tup, n):
            yield tup


def _check_budget(n: int, m: int, budget: int) -> None:
    cost = factorial(n) ** (m - 1)
    if cost > budget:
        raise BudgetExceeded(f"(n!)^(m-1) = ({n}!)^{m - 1} = {cost} tuples exceeds budget {budget}")


def iter_arbitrary_factorizations(
    alpha: Partition, m: int, target: Permutation | None = None, budget: int = DEFAULT_BUDGET
) -> Iterator[tuple[Permutation, ...]]:
    """Every transitive ``(p_1..p_m)`` with product ``target``, any genus.

    The first m-1 factors range over S_n; the last one is solved for.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = alpha.n
    _check_budget(n, m, budget)
    target = target or Permutation.canonical(alpha)
    if cycle_type(target) != alpha:
        raise ValueError("target does not have cycle type alpha")
    group = [Permutation(p) for p in permutations(range(1, n + 1))]
    for head in product(group, repeat=m - 1):
        partial = Permutation.identity(n)
        for p in head:
            partial = partial * p
        last = partial.inverse() * target
        tup = head + (last,)
        if is_transitive(tup, n):
            yield tup


def count_factorizations_arbitrary(
    alpha: Partition, m: int, target: Permutation | None = None, budget: int = DEFAULT_BUDGET
) -> FactorizationCount:
    """Transitive m-tuples with product ``target`` and exactly c(alpha, m) factor cycles in total."""
    started = time.perf_counter()
    want = c_alpha(alpha, m)
    count = sum(
        1
        for tup in iter_arbitrary_factorizations(alpha, m, target, budget)
        if sum(len(p.cycles()) for p in tup) == want
    )
    return FactorizationCount(alpha, "arbitrary", count, m=m, elapsed_ms=1000 * (time.perf_counter() - started))


def census(n: int, m: int | None = None, budget: int = DEFAULT_BUDGET,
           max_n: int = MAX_TRANSPOSITION_N) -> dict[Partition, FactorizationCount]:
    """Counts for every alpha of n; transpositions when ``m`` is None."""
    if m is None:
        return {a: count_factorizations_transpositions(a, max_n=max_n) for a in partitions_of(n)}
    return {a: count_factorizations_arbitrary(a, m, budget=budget) for a in partitions_of(n)}
