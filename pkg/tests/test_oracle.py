import random

import pytest

from covercount.closed_form import g_value, h_value
from covercount.oracle import (
    BudgetExceeded,
    census,
    count_factorizations_arbitrary,
    count_factorizations_transpositions,
    is_transitive,
    iter_arbitrary_factorizations,
    iter_transposition_factorizations,
)
from covercount.partitions import Partition, Permutation, c_alpha, cycle_type, genus_of, partitions_of

P = Partition.of
SMALL = [a for n in range(1, 5) for a in partitions_of(n)]


def t(n, a, b):
    return Permutation.from_cycles(n, [(a, b)])


def test_is_transitive_examples():
    assert is_transitive([t(2, 1, 2)], 2)
    assert is_transitive([], 1)
    assert not is_transitive([], 2)
    assert not is_transitive([t(4, 1, 2), t(4, 3, 4)], 4)
    assert is_transitive([t(4, 1, 2), t(4, 3, 4), t(4, 2, 3)], 4)


def test_transposition_examples():
    assert count_factorizations_transpositions(P([2])).count == 1
    assert count_factorizations_transpositions(P([1, 1])).count == 1
    assert count_factorizations_transpositions(P([3])).count == 3
    assert count_factorizations_transpositions(P([2, 2])).count == 96


def test_arbitrary_examples():
    assert count_factorizations_arbitrary(P([3]), 2).count == 5
    assert count_factorizations_arbitrary(P([2]), 2).count == 2
    assert count_factorizations_arbitrary(P([1]), 5).count == 1


@pytest.mark.parametrize("alpha", [a for a in SMALL if a.n <= 3] + [P([4]), P([2, 2]), P([3, 1])], ids=str)
def test_memoized_search_equals_plain_enumeration(alpha):
    tuples = list(iter_transposition_factorizations(alpha))
    assert count_factorizations_transpositions(alpha).count == len(tuples)
    target = Permutation.canonical(alpha)
    for tup in tuples:
        assert genus_of(alpha, [cycle_type(x) for x in tup]) == 0


@pytest.mark.parametrize("alpha", [a for n in range(1, 6) for a in partitions_of(n)], ids=str)
def test_transpositions_match_formula(alpha):
    assert count_factorizations_transpositions(alpha).count == h_value(alpha)


@pytest.mark.parametrize(
    "alpha,m", [(a, 2) for a in SMALL] + [(a, 3) for a in SMALL if a.n <= 3] + [(a, 4) for a in SMALL if a.n <= 3],
    ids=str,
)
def test_arbitrary_match_formula(alpha, m):
    assert count_factorizations_arbitrary(alpha, m).count == g_value(alpha, m)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("alpha", [a for a in SMALL if a.n <= 3], ids=str)
def test_genus_zero_iff_cycle_count(alpha, m):
    want = c_alpha(alpha, m)
    for tup in iter_arbitrary_factorizations(alpha, m):
        g = genus_of(alpha, [cycle_type(p) for p in tup])
        assert g >= 0 and g.denominator == 1  # transitive covers have integral genus >= 0
        assert (g == 0) == (sum(len(p.cycles()) for p in tup) == want)


@pytest.mark.parametrize("alpha", [a for a in SMALL], ids=str)
def test_single_factor(alpha):
    # the lone factor is the target itself: minimal (c = 2 - l) and transitive only for an n-cycle
    assert count_factorizations_arbitrary(alpha, 1).count == (alpha.l == 1)


@pytest.mark.parametrize("alpha", [P([3, 1]), P([2, 2]), P([2, 1, 1]), P([3])], ids=str)
def test_count_independent_of_representative(alpha):
    rng = random.Random(hash(alpha.parts))
    images = list(range(1, alpha.n + 1))
    rng.shuffle(images)
    sigma = Permutation(images)
    conj = sigma * Permutation.canonical(alpha) * sigma.inverse()
    assert count_factorizations_transpositions(alpha, conj).count == count_factorizations_transpositions(alpha).count
    assert count_factorizations_arbitrary(alpha, 2, conj).count == count_factorizations_arbitrary(alpha, 2).count


def test_wrong_representative_rejected():
    with pytest.raises(ValueError):
        count_factorizations_transpositions(P([3]), Permutation.identity(3))


def test_budgets():
    with pytest.raises(BudgetExceeded, match=r"\(n!\)\^\(m-1\)"):
        count_factorizations_arbitrary(P([6]), 2)
    with pytest.raises(BudgetExceeded):
        count_factorizations_arbitrary(P([4]), 4)
    with pytest.raises(BudgetExceeded, match="max_n"):
        count_factorizations_transpositions(P([7]))
    assert count_factorizations_arbitrary(P([5]), 2, budget=120).count == g_value(P([5]), 2)


def test_census():
    two = census(2)
    assert {a.parts: r.count for a, r in two.items()} == {(2,): 1, (1, 1): 1}
    three = census(3, m=2)
    assert list(three) == partitions_of(3)
    assert all(r.count == g_value(a, 2) for a, r in three.items())
    assert {a.parts: r.count for a, r in census(1, m=4).items()} == {(1,): 1}
    assert {a.parts: r.count for a, r in census(1).items()} == {(1,): 1}


def test_json_form():
    doc = count_factorizations_arbitrary(P([3]), 2).to_json()
    assert (doc["alpha"], doc["mode"], doc["m"], doc["count"]) == ([3], "arbitrary", 2, "5")
    assert "elapsed_ms" in doc
