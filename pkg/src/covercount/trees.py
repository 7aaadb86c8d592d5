"""Planted m-Eulerian plane trees, pseudo-Eulerian trees and the contour leaf matching.

Trees are generated top-down from the white vertex next to the root.  A white
inner vertex with ``d_i`` marker ``i`` has ``mi - 1`` ordered child slots:
``i - 1`` of them hold an inner black vertex of inner degree 1 (all its other
neighbours are white leaves), and each of the rest holds either a black leaf
or a pseudo-Eulerian subtree, i.e. a black vertex of inner degree 2 whose one
white inner child sits at one of ``m - 1`` positions.  Pseudo-Eulerian trees
are exactly these subtrees re-rooted at a white leaf.

Generated trees are rebuilt as explicit :class:`PlaneTree` objects and checked
against the defining degree conditions independently of the generator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .closed_form import balanced_value
from .partitions import Partition, c_alpha, partitions_of

BLACK, WHITE = "B", "W"
ORIENTATIONS = ("ccw", "cw")
DEFAULT_ORIENTATION = "ccw"
DEFAULT_MAX_N = 4
DEFAULT_MAX_M = 3


class TreeBudgetExceeded(RuntimeError):
    pass


class InvalidTree(ValueError):
    pass


# Shape grammar ---------------------------------------------------------------
# white  := ("W", i, slots)            slots: tuple of "b" | "d1" | pseudo
# pseudo := ("P", pos, white)          pos in range(m - 1)
# The multiset of white markers is carried as a sorted tuple.

def _sub_multisets(ms: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (part, rest) for every nonempty sub-multiset ``part`` of ``ms``."""
    counts = sorted(Counter(ms).items())
    for take in product(*(range(c + 1) for _, c in counts)):
        if not any(take):
            continue
        part, rest = [], []
        for (val, c), t in zip(counts, take):
            part += [val] * t
            rest += [val] * (c - t)
        yield tuple(sorted(part, reverse=True)), tuple(sorted(rest, reverse=True))


def _ordered_splits(ms: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Sequences of k nonempty multisets whose union is ``ms``."""
    if k == 0:
        if not ms:
            yield ()
        return
    if len(ms) < k:
        return
    for part, rest in _sub_multisets(ms):
        for tail in _ordered_splits(rest, k - 1):
            yield (part,) + tail


@lru_cache(maxsize=None)
def _whites(ms: tuple[int, ...], m: int) -> tuple:
    out = []
    for i in sorted(set(ms), reverse=True):
        rest = list(ms)
        rest.remove(i)
        rest = tuple(rest)
        n_slots = m * i - 1
        for d1_pos in combinations(range(n_slots), i - 1):
            free = [s for s in range(n_slots) if s not in d1_pos]
            for k in range(min(len(free), len(rest)) + 1):
                for pseudo_pos in combinations(free, k):
                    for split in _ordered_splits(rest, k):
                        choices = [_pseudos(part, m) for part in split]
                        for picked in product(*choices):
                            slots: list = ["b"] * n_slots
                            for s in d1_pos:
                                slots[s] = "d1"
                            for s, sub in zip(pseudo_pos, picked):
                                slots[s] = sub
                            out.append(("W", i, tuple(slots)))
    return tuple(out)


@lru_cache(maxsize=None)
def _pseudos(ms: tuple[int, ...], m: int) -> tuple:
    return tuple(("P", pos, w) for w in _whites(ms, m) for pos in range(m - 1))


# Explicit trees --------------------------------------------------------------

class PlaneTree:
    """A rooted plane tree: vertex 0 is the root, children are kept in plane order."""

    def __init__(self, colors: Sequence[str], children: Sequence[Sequence[int]]):
        self.colors = list(colors)
        self.children = [list(c) for c in children]
        self.parent = [-1] * len(self.colors)
        for v, kids in enumerate(self.children):
            for c in kids:
                self.parent[c] = v

    def __len__(self) -> int:
        return len(self.colors)

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] >= 0)

    def neighbours(self, v: int) -> list[int]:
        return ([self.parent[v]] if self.parent[v] >= 0 else []) + self.children[v]

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    def inner_degree(self, v: int) -> int:
        return sum(not self.is_leaf(w) for w in self.neighbours(v))

    def leaves(self, color: str | None = None) -> list[int]:
        return [v for v in range(len(self)) if self.is_leaf(v) and (color is None or self.colors[v] == color)]

    def inner(self, color: str) -> list[int]:
        return [v for v in range(len(self)) if not self.is_leaf(v) and self.colors[v] == color]

    def key(self) -> tuple:
        """Structural identity of the planted plane tree."""
        def enc(v: int) -> tuple:
            return (self.colors[v], tuple(enc(c) for c in self.children[v]))
        return enc(0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneTree) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def white_profile(self, m: int) -> Partition:
        return Partition.of(self.degree(v) // m for v in self.inner(WHITE))


class _Builder:
    def __init__(self, m: int):
        self.m = m
        self.colors: list[str] = []
        self.children: list[list[int]] = []

    def add(self, color: str) -> int:
        self.colors.append(color)
        self.children.append([])
        return len(self.colors) - 1

    def white(self, shape: tuple) -> int:
        _, i, slots = shape
        v = self.add(WHITE)
        for slot in slots:
            if slot == "b":
                c = self.add(BLACK)
            elif slot == "d1":
                c = self.add(BLACK)
                self.children[c] = [self.add(WHITE) for _ in range(self.m - 1)]
            else:
                c = self.pseudo_black(slot)
            self.children[v].append(c)
        return v

    def pseudo_black(self, shape: tuple) -> int:
        """The black vertex of a pseudo subtree; its white child sits at ``pos``."""
        _, pos, w = shape
        b = self.add(BLACK)
        kids = []
        for j in range(self.m - 1):
            kids.append(self.white(w) if j == pos else self.add(WHITE))
        self.children[b] = kids
        return b

    def tree(self) -> PlaneTree:
        return PlaneTree(self.colors, self.children)


def planted_from_shape(shape: tuple, m: int) -> PlaneTree:
    b = _Builder(m)
    root = b.add(BLACK)
    b.children[root] = [b.white(shape)]
    return b.tree()


def pseudo_from_shape(shape: tuple, m: int) -> PlaneTree:
    """Root white leaf above the replacement black vertex of a pseudo subtree."""
    b = _Builder(m)
    root = b.add(WHITE)
    b.children[root] = [b.pseudo_black(shape)]
    return b.tree()


def validate_eulerian(t: PlaneTree, m: int, alpha: Partition | None = None) -> None:
    """Raise :class:`InvalidTree` unless ``t`` is a planted m-Eulerian tree (of type alpha)."""
    if not (t.colors[0] == BLACK and t.is_leaf(0)):
        raise InvalidTree("root must be a black leaf")
    for v in range(len(t)):
        for w in t.children[v]:
            if t.colors[v] == t.colors[w]:
                raise InvalidTree(f"edge {v}-{w} joins two {t.colors[v]} vertices")
    for v in t.inner(BLACK):
        if t.degree(v) != m or t.inner_degree(v) not in (1, 2):
            raise InvalidTree(f"inner black {v}: degree {t.degree(v)}, inner degree {t.inner_degree(v)}")
    for v in t.inner(WHITE):
        deg = t.degree(v)
        if deg % m:
            raise InvalidTree(f"inner white {v} has degree {deg}, not a multiple of {m}")
        i = deg // m
        ones = sum(1 for w in t.neighbours(v) if not t.is_leaf(w) and t.inner_degree(w) == 1)
        if ones != i - 1:
            raise InvalidTree(f"inner white {v} of degree {deg} has {ones} inner-degree-1 neighbours")
    nb, nw = len(t.leaves(BLACK)), len(t.leaves(WHITE))
    if nb - nw != m:
        raise InvalidTree(f"{nb} black leaves vs {nw} white leaves")
    if alpha is not None:
        if t.white_profile(m) != alpha:
            raise InvalidTree("white degree profile differs from the type")
        if len(t.inner(BLACK)) != alpha.n - 1:
            raise InvalidTree("wrong number of inner black vertices")
        if nb != c_alpha(alpha, m):
            raise InvalidTree("wrong number of black leaves")
        twos = sum(1 for v in t.inner(BLACK) if t.inner_degree(v) == 2)
        if twos != alpha.l - 1:
            raise InvalidTree("wrong number of inner-degree-2 black vertices")


def _check_budget(n: int, m: int, max_n: int, max_m: int) -> None:
    if n > max_n or m > max_m:
        raise TreeBudgetExceeded(f"tree enumeration limited to n <= {max_n}, m <= {max_m} (got n={n}, m={m})")


def enumerate_planted(alpha: Partition, m: int, max_n: int = DEFAULT_MAX_N,
                      max_m: int = DEFAULT_MAX_M, validate: bool = True) -> list[PlaneTree]:
    """All planted m-Eulerian plane trees of type ``alpha``, each once."""
    if m < 2:
        raise ValueError("m must be at least 2")
    _check_budget(alpha.n, m, max_n, max_m)
    if c_alpha(alpha, m) == 0:
        return []
    trees = [planted_from_shape(s, m) for s in _whites(alpha.parts, m)]
    if validate:
        for t in trees:
            validate_eulerian(t, m, alpha)
        if len(set(trees)) != len(trees):
            raise InvalidTree("generator produced a duplicate tree")
    return trees


# Leaf matching ---------------------------------------------------------------

def contour_sequence(t: PlaneTree) -> list[int]:
    """Leaves in the order a clockwise contour walk from the root meets them."""
    out, stack = [], [0]
    while stack:
        v = stack.pop()
        if t.is_leaf(v):
            out.append(v)
        stack.extend(reversed(t.children[v]))
    return out


@dataclass(frozen=True)
class LeafMatching:
    pairs: frozenset[tuple[int, int]]  # (white leaf, black leaf)
    unmatched: tuple[int, ...]


def match_leaves(seq: Sequence[int], colors: Sequence[str] | dict, m: int | None = None,
                 orientation: str = DEFAULT_ORIENTATION) -> LeafMatching:
    """Pair each white leaf with a black leaf along the cyclic sequence ``seq``.

    Read like brackets: in ``ccw`` a white leaf opens and the next unmatched
    black leaf after it (cyclically, in sequence order) closes; ``cw`` reads
    the sequence backwards.  Adjacent white-black pairs are removed until no
    white leaf is left.  ``colors`` maps a leaf id to ``"B"`` or ``"W"``.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    ring = list(seq) if orientation == "ccw" else list(reversed(seq))
    blacks = sum(colors[v] == BLACK for v in ring)
    whites = len(ring) - blacks
    if m is not None and blacks - whites != m:
        raise ValueError(f"need {m} more black than white leaves, got {blacks} and {whites}")
    if blacks <= whites and whites:
        raise ValueError("not enough black leaves to match every white leaf")
    pairs = set()
    while any(colors[v] == WHITE for v in ring):
        L = len(ring)
        for j in range(L):
            a, b = ring[j], ring[(j + 1) % L]
            if colors[a] == WHITE and colors[b] == BLACK:
                pairs.add((a, b))
                ring = [v for v in ring if v not in (a, b)]
                break
        else:
            raise RuntimeError("leaf matching got stuck")
    unmatched = tuple(v for v in seq if v in set(ring))
    matching = LeafMatching(frozenset(pairs), unmatched)
    _assert_noncrossing(seq, matching)
    return matching


def _assert_noncrossing(seq: Sequence[int], matching: LeafMatching) -> None:
    pos = {v: k for k, v in enumerate(seq)}
    chords = [tuple(sorted((pos[a], pos[b]))) for a, b in matching.pairs]
    for (a, b), (c, d) in combinations(chords, 2):
        if (a < c < b < d) or (c < a < d < b):
            raise RuntimeError("leaf matching is crossing")


def is_balanced(t: PlaneTree, m: int, orientation: str = DEFAULT_ORIENTATION) -> bool:
    seq = contour_sequence(t)
    return 0 in match_leaves(seq, t.colors, m, orientation).unmatched


def count_balanced(alpha: Partition, m: int, orientation: str = DEFAULT_ORIENTATION,
                   max_n: int = DEFAULT_MAX_N, max_m: int = DEFAULT_MAX_M) -> int:
    return sum(is_balanced(t, m, orientation) for t in enumerate_planted(alpha, m, max_n, max_m))


# Pseudo-Eulerian trees -------------------------------------------------------

def enumerate_pseudo(alpha: Partition, m: int, max_n: int = DEFAULT_MAX_N,
                     max_m: int = DEFAULT_MAX_M) -> list[PlaneTree]:
    if m < 2:
        raise ValueError("m must be at least 2")
    _check_budget(alpha.n, m, max_n, max_m)
    return [pseudo_from_shape(s, m) for s in _pseudos(alpha.parts, m)]


def count_pseudo(n: int, m: int, max_n: int = DEFAULT_MAX_N,
                 max_m: int = DEFAULT_MAX_M) -> dict[tuple[Partition, int], int]:
    """Pseudo-Eulerian trees with n inner black vertices, by (white profile, black leaves)."""
    table: Counter = Counter()
    if n < 1:
        return {}
    _check_budget(n, m, max_n, max_m)
    for alpha in partitions_of(n):
        for t in enumerate_pseudo(alpha, m, max_n, max_m):
            if len(t.inner(BLACK)) != n:
                raise InvalidTree("pseudo tree has the wrong number of inner black vertices")
            table[(t.white_profile(m), len(t.leaves(BLACK)))] += 1
    return dict(table)


def tree_report(alpha: Partition, m: int, orientation: str = DEFAULT_ORIENTATION,
                max_n: int = DEFAULT_MAX_N, max_m: int = DEFAULT_MAX_M) -> dict:
    trees = enumerate_planted(alpha, m, max_n, max_m)
    balanced = sum(is_balanced(t, m, orientation) for t in trees)
    prediction = balanced_value(alpha, m)
    return {
        "alpha": list(alpha.parts),
        "m": m,
        "orientation": orientation,
        "planted_count": len(trees),
        "balanced_count": balanced,
        "prediction": prediction,
        "match": balanced == prediction,
    }
