"""Exit criteria for the package, shared by ``tests/test_acceptance.py`` and ``covercount selftest``.

Every comparison is exact.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .closed_form import balanced_value, g_value, h_value
from .identities import G_FAMILY, H_FAMILY, build_Aw, verify
from .lagrange import G_kernel, H_kernel, lagrange_coeff, solve_fixed_point
from .oracle import count_factorizations_arbitrary, count_factorizations_transpositions
from .partitions import Partition, partitions_of
from .trees import DEFAULT_ORIENTATION, ORIENTATIONS, count_balanced, count_pseudo, enumerate_planted


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "status": "pass" if self.passed else "fail",
                "detail": self.detail}


def _mismatches(pairs) -> list[str]:
    return [f"{a}: {got} != {want}" for a, got, want in pairs if got != want]


def oracle_transpositions(max_n: int = 5) -> tuple[bool, str]:
    rows = [(a, count_factorizations_transpositions(a).count, h_value(a))
            for n in range(1, max_n + 1) for a in partitions_of(n)]
    bad = _mismatches(rows)
    return not bad, "; ".join(bad) or f"{len(rows)} partitions agree (H_3=3, H_2,2=96 included)"


def oracle_arbitrary() -> tuple[bool, str]:
    rows = []
    for m, top in ((2, 4), (3, 3)):
        for n in range(1, top + 1):
            for a in partitions_of(n):
                rows.append((f"{a} m={m}", count_factorizations_arbitrary(a, m).count, g_value(a, m)))
    bad = _mismatches(rows)
    return not bad, "; ".join(bad) or f"{len(rows)} (alpha, m) cases agree"


def _identity_suite(tags, N, ms) -> tuple[bool, str]:
    reports = [verify(tag, N, m) for m in ms for tag in tags]
    bad = [f"{r.identity}(m={r.m}) at z^{r.first_discrepancy.degree}" for r in reports if not r.passed]
    return not bad, "; ".join(bad) or f"{len(reports)} identity checks pass at N={N}"


def g_identities() -> tuple[bool, str]:
    return _identity_suite(G_FAMILY, 6, (2, 3, 4))


def h_identities() -> tuple[bool, str]:
    return _identity_suite(H_FAMILY, 8, (None,))


def lagrange_crosscheck() -> tuple[bool, str]:
    kernels = [H_kernel(8)] + [G_kernel(m, 6) for m in (2, 3, 4)]
    bad = []
    for phi in kernels:
        f = solve_fixed_point(phi)
        for n in range(1, phi.order + 1):
            if f.coeffs[n] != lagrange_coeff(phi, n):
                bad.append(f"{phi.kind}(m={phi.m}) n={n}")
    return not bad, "; ".join(bad) or "fixed point equals Lagrange extraction for all n"


def tree_counts(orientation: str = DEFAULT_ORIENTATION) -> tuple[bool, str]:
    rows = []
    for m, top in ((2, 4), (3, 3)):
        for n in range(1, top + 1):
            for a in partitions_of(n):
                enumerate_planted(a, m)  # validates every tree
                rows.append((f"{a} m={m}", count_balanced(a, m, orientation), balanced_value(a, m)))
    bad = _mismatches(rows)
    return not bad, "; ".join(bad) or f"{len(rows)} types agree, orientation={orientation}"


def _aw_table(m: int, n: int, Aw) -> dict[tuple[Partition, int], int]:
    table = {}
    for mono, q in Aw.coeffs[n].terms.items():
        alpha = Partition.of(i for i, e in mono.p for _ in range(e))
        if mono.u != alpha.l:
            raise AssertionError(f"u-degree {mono.u} differs from l(alpha) in A(w)")
        table[(alpha, mono.x)] = q
    return table


def pseudo_counts(m: int = 2, top: int = 4) -> tuple[bool, str]:
    Aw = build_Aw(m, top)
    bad = [f"n={n}" for n in range(1, top + 1) if count_pseudo(n, m) != _aw_table(m, n, Aw)]
    return not bad, "; ".join(bad) or f"pseudo-tree tables equal [z^n]A(w) for n<={top}, m={m}"


def integrality(top: int = 12) -> tuple[bool, str]:
    # the evaluators raise ArithmeticError on a non-integral value
    checked = 0
    try:
        for n in range(1, top + 1):
            for a in partitions_of(n):
                h_value(a)
                for m in (2, 3, 4, 5):
                    g_value(a, m)
                    balanced_value(a, m)
                    checked += 1
    except ArithmeticError as exc:
        return False, str(exc)
    return True, f"{checked} (alpha, m) cases integral"


def mutation_sensitivity(top: int = 4, ms=(2, 3, 4)) -> tuple[bool, str]:
    missed = []
    cases = 0
    for m in ms:
        for n in range(1, top + 1):
            for alpha in partitions_of(n):
                def corrupted(a: Partition, mm: int, _t=alpha) -> int:
                    return g_value(a, mm) + (a == _t)

                hit = any(
                    (d := verify(tag, top, m, g=corrupted).first_discrepancy) is not None and d.degree == n
                    for tag in ("RECG", "MAIN1", "MAIN2")
                )
                cases += 1
                if not hit:
                    missed.append(f"{alpha} m={m}")
    return not missed, "; ".join(missed) or f"all {cases} single perturbations detected at their own degree"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "closed form vs oracle, transpositions (n<=5)", oracle_transpositions),
    (2, "closed form vs oracle, arbitrary factors", oracle_arbitrary),
    (3, "G-family identities at N=6, m in {2,3,4}", g_identities),
    (4, "H-family identities at N=8", h_identities),
    (5, "Lagrange cross-check", lagrange_crosscheck),
    (6, "balanced tree counts", tree_counts),
    (7, "pseudo-tree counts vs A(w)", pseudo_counts),
    (8, "integrality sweep n<=12", integrality),
    (9, "mutation sensitivity", mutation_sensitivity),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn in CRITERIA:
        if num == number:
            started = time.perf_counter()
            passed, detail = fn()
            return CriterionResult(num, name, passed, detail, time.perf_counter() - started)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(num) for num, _, _ in CRITERIA]


def balanced_orientations() -> dict[str, bool]:
    """Which matching orientations reproduce the balanced-tree prediction."""
    return {o: tree_counts(o)[0] for o in ORIENTATIONS}
