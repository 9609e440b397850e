"""E₂ page, d₂ and E₃ of the LHS spectral sequence of L ⋊ ℤ/m.

E₂^{i,j} = Hⁱ(G; Λʲ L^∧). The differential E₂^{r,s+1} → E₂^{r+2,s}
is the coefficient map α_s scaled by (−1)^r followed by the periodicity
identification; for r = 0 invariants land in ker(aug)/im(norm).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from logging import Logger
from typing import Dict, List, Optional, Tuple

from sympy import isprime

from .alpha import (
    CONVENTION_SIGN,
    DEFAULT_WORD_CAP,
    AlphaData,
    compute_alpha,
    obstruction_nonzero,
)
from .cohomology import CohomologyGroup, group_cohomology, homological_euler_h
from .exception import (
    InvariantViolationError,
    PreconditionError,
    UsageError,
)
from .glattice import (
    CyclicAction,
    direct_sum_construction,
    dual,
    exterior_power,
    is_free_outside_origin,
)
from .intlinalg import (
    IntegerMatrix,
    SubquotientPresentation,
    hstack,
    induced_map,
    kernel_basis,
    span_quotient,
)
from .model.common import AbelianGroupStructure

log: Logger = logging.getLogger(__name__)

DEFAULT_IMAX: int = 4

Bidegree = Tuple[int, int]


def fold(i: int) -> int:
    """Representative of column i in {0, 1, 2} under 2-periodicity."""
    return i if i <= 2 else 1 + (i - 1) % 2


def coefficients(a: CyclicAction, j: int) -> CyclicAction:
    return exterior_power(dual(a), j)


@dataclass(frozen=True)
class E2Page:
    n: int
    i_max: int
    label: str
    cells: Tuple[Tuple[CohomologyGroup, ...], ...]

    def cell(self, i: int, j: int) -> CohomologyGroup:
        if not 0 <= j <= self.n or i < 0:
            raise UsageError(f"Bidegree out of range [({i}, {j})]")
        return self.cells[j][i if i <= self.i_max else fold(i)]

    def structure(self, i: int, j: int) -> AbelianGroupStructure:
        return self.cell(i, j).structure

    def bidegrees(self) -> List[Bidegree]:
        return [
            (i, j) for j in range(self.n + 1) for i in range(self.i_max + 1)
        ]


@lru_cache(maxsize=64)
def build_e2(a: CyclicAction, i_max: int = DEFAULT_IMAX) -> E2Page:
    if i_max < 2:
        raise UsageError(f"Column bound must be at least 2 [i_max={i_max}]")
    cells = tuple(
        tuple(
            group_cohomology(coefficients(a, j), i) for i in range(i_max + 1)
        )
        for j in range(a.n + 1)
    )
    log.info(
        "E2 page built [Label=%s, N=%s, M=%s, Imax=%s]",
        a.label,
        a.n,
        a.m,
        i_max,
    )
    return E2Page(a.n, i_max, a.label, cells)


def checkerboard_violations(page: E2Page) -> List[Bidegree]:
    return [
        (i, j)
        for i, j in page.bidegrees()
        if i >= 1 and (i + j) % 2 and not page.structure(i, j).is_trivial()
    ]


def _target_presentation(
    a: CyclicAction, s: int, r: int
) -> SubquotientPresentation:
    return group_cohomology(coefficients(a, s), fold(r + 2)).presentation


@dataclass(frozen=True)
class DifferentialReport:
    n: int
    label: str
    maps: Tuple[Tuple[Bidegree, IntegerMatrix], ...]
    witnesses: Tuple[Tuple[int, int, int], ...]

    @property
    def all_zero(self) -> bool:
        return not self.witnesses

    def map_at(self, r: int, s: int) -> IntegerMatrix:
        """d₂: E₂^{r,s+1} → E₂^{r+2,s}, any r ≥ 0."""
        key: Bidegree = (fold(r), s)
        for bidegree, matrix in self.maps:
            if bidegree == key:
                return matrix
        raise UsageError(f"No differential at [r={r}, s={s}]")


def d2(
    a: CyclicAction,
    word_cap: int = DEFAULT_WORD_CAP,
    sign: int = CONVENTION_SIGN,
    descending: bool = False,
) -> DifferentialReport:
    return _d2(a, word_cap, sign, descending)


@lru_cache(maxsize=64)
def _d2(
    a: CyclicAction, word_cap: int, sign: int, descending: bool
) -> DifferentialReport:
    data: AlphaData = compute_alpha(a, word_cap, sign, descending)
    maps: List[Tuple[Bidegree, IntegerMatrix]] = []
    witnesses: List[Tuple[int, int, int]] = []
    for r in range(3):
        for s in range(a.n):
            src: SubquotientPresentation = group_cohomology(
                coefficients(a, s + 1), r
            ).presentation
            matrix: IntegerMatrix = induced_map(
                data.alpha_s(s).scale((-1) ** r),
                src,
                _target_presentation(a, s, r),
            )
            maps.append(((r, s), matrix))
            for col in range(matrix.cols):
                if any(matrix.column(col)):
                    witnesses.append((r, s, col))
    report = DifferentialReport(a.n, a.label, tuple(maps), tuple(witnesses))
    _check_square_zero(a, report)
    log.info(
        "Differential computed [Label=%s, AllZero=%s, Witnesses=%s]",
        a.label,
        report.all_zero,
        len(witnesses),
    )
    return report


def _check_square_zero(a: CyclicAction, report: DifferentialReport) -> None:
    for r in range(3):
        for s in range(a.n - 1):
            first: IntegerMatrix = report.map_at(r, s + 1)
            second: IntegerMatrix = report.map_at(r + 2, s)
            factors: Tuple[int, ...] = group_cohomology(
                coefficients(a, s), fold(r + 4)
            ).structure.factors
            product: IntegerMatrix = second @ first
            for row, mod in enumerate(factors):
                values = product.row(row)
                if any((v % mod if mod else v) for v in values):
                    raise InvariantViolationError(
                        "d2 squares to zero", a.label, (r, s)
                    )


def collapse_at_d2(
    a: CyclicAction, word_cap: int = DEFAULT_WORD_CAP
) -> bool:
    return d2(a, word_cap).all_zero


@dataclass(frozen=True)
class E3Page:
    n: int
    i_max: int
    cells: Tuple[Tuple[AbelianGroupStructure, ...], ...]

    def structure(self, i: int, j: int) -> AbelianGroupStructure:
        return self.cells[j][i if i <= self.i_max else fold(i)]


def build_e3(
    a: CyclicAction,
    i_max: int = DEFAULT_IMAX,
    word_cap: int = DEFAULT_WORD_CAP,
) -> E3Page:
    page: E2Page = build_e2(a, i_max)
    report: DifferentialReport = d2(a, word_cap)
    rows: List[Tuple[AbelianGroupStructure, ...]] = []
    for j in range(a.n + 1):
        row: List[AbelianGroupStructure] = []
        for i in range(i_max + 1):
            incoming: Optional[IntegerMatrix] = (
                report.map_at(i - 2, j) if i >= 2 and j < a.n else None
            )
            outgoing: Optional[IntegerMatrix] = (
                report.map_at(i, j - 1) if j >= 1 else None
            )
            target: Optional[AbelianGroupStructure] = (
                page.structure(i + 2, j - 1) if j >= 1 else None
            )
            row.append(
                _homology(page.structure(i, j), incoming, outgoing, target)
            )
        rows.append(tuple(row))
    return E3Page(a.n, i_max, tuple(rows))


def _homology(
    here: AbelianGroupStructure,
    incoming: Optional[IntegerMatrix],
    outgoing: Optional[IntegerMatrix],
    target: Optional[AbelianGroupStructure],
) -> AbelianGroupStructure:
    size: int = here.size
    if size == 0:
        return here
    if outgoing is None or target is None:
        cycles: IntegerMatrix = IntegerMatrix.identity(size)
    else:
        torsion_rel: IntegerMatrix = IntegerMatrix.diagonal(target.factors)
        kernel: IntegerMatrix = kernel_basis(
            hstack(target.size, outgoing, torsion_rel)
        )
        cycles = IntegerMatrix.from_columns(
            [col[:size] for col in kernel.columns()], size
        )
    relations: List[IntegerMatrix] = [IntegerMatrix.diagonal(here.factors)]
    if incoming is not None:
        relations.insert(0, incoming)
    return span_quotient(size, cycles, hstack(size, *relations)).structure


@dataclass(frozen=True)
class EulerRatio:
    k: int
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def antidiagonal_order(a: CyclicAction, total: int) -> int:
    """∏_{i+j=total} |E₂^{i,j}| for total > n (all cells have i ≥ 1)."""
    page: E2Page = build_e2(a)
    order: int = 1
    for j in range(a.n + 1):
        cell: Optional[int] = page.structure(total - j, j).order()
        if cell is None:
            raise InvariantViolationError(
                "finite E2 cell", a.label, (total - j, j)
            )
        order *= cell
    return order


def euler_ratio_check(a: CyclicAction, k: int) -> EulerRatio:
    if 2 * k <= a.n:
        raise PreconditionError(
            "euler_ratio_check", f"2k > n (k={k}, n={a.n})"
        )
    lhs = Fraction(
        antidiagonal_order(a, 2 * k), antidiagonal_order(a, 2 * k + 1)
    )
    return EulerRatio(k, lhs, homological_euler_h(a))


def min_k(n: int) -> int:
    """Smallest k with 2k > n."""
    return n // 2 + 1


@dataclass(frozen=True)
class PrimeCaseReport:
    p: int
    n: int
    s: int
    h1_order: int
    ratio: Fraction
    even_order: int
    odd_order: int

    @property
    def expected_h1(self) -> int:
        return self.p**self.s

    @property
    def expected_ratio(self) -> int:
        return self.p ** (self.p**self.s)

    @property
    def consistent(self) -> bool:
        return (
            self.h1_order == self.expected_h1
            and self.ratio == self.expected_ratio
            and self.even_order == self.expected_ratio
            and self.odd_order == 1
        )

    @property
    def prediction(self) -> str:
        return f"H^2k = (Z/{self.p})^{self.expected_h1}, H^2k+1 = 0"


def prime_case_report(a: CyclicAction) -> PrimeCaseReport:
    p: int = a.m
    if not isprime(p):
        raise PreconditionError("prime_case_report", f"m prime (m={p})")
    if not is_free_outside_origin(a):
        raise PreconditionError(
            "prime_case_report", "action free outside the origin"
        )
    if a.n % (p - 1):
        raise PreconditionError(
            "prime_case_report", f"(p-1) divides n (p={p}, n={a.n})"
        )
    h1: Optional[int] = group_cohomology(a, 1).structure.order()
    k: int = min_k(a.n)
    report = PrimeCaseReport(
        p=p,
        n=a.n,
        s=a.n // (p - 1),
        h1_order=h1 if h1 is not None else 0,
        ratio=homological_euler_h(a),
        even_order=antidiagonal_order(a, 2 * k),
        odd_order=antidiagonal_order(a, 2 * k + 1),
    )
    if not report.consistent:
        log.warning(
            "Prime case mismatch [Label=%s, H1=%s, Ratio=%s]",
            a.label,
            report.h1_order,
            report.ratio,
        )
    return report


def fixed_point_ratio(a: CyclicAction) -> Optional[bool]:
    """With L^G ≠ 0 the order ratio is 1; None when L^G = 0."""
    if group_cohomology(a, 0).structure.free_rank == 0:
        return None
    return homological_euler_h(a) == 1


@dataclass(frozen=True)
class DirectSumCheck:
    label: str
    obstruction: bool
    witness_at_s2: bool

    @property
    def consistent(self) -> bool:
        return not self.obstruction or self.witness_at_s2


def direct_sum_check(
    x: CyclicAction,
    word_cap: int = DEFAULT_WORD_CAP,
    sign: int = CONVENTION_SIGN,
) -> DirectSumCheck:
    """X with [α₁] ≠ 0 forces a non-zero d₂ out of row 3 on X ⊕ (Λ²X)^∧."""
    report: DifferentialReport = d2(
        direct_sum_construction(x), word_cap, sign
    )
    return DirectSumCheck(
        x.label,
        obstruction_nonzero(x, compute_alpha(x, word_cap, sign)),
        any(s == 2 for _, s, _ in report.witnesses),
    )


def witness_summary(report: DifferentialReport) -> Dict[Bidegree, int]:
    """Number of non-zero columns per (r, s)."""
    summary: Dict[Bidegree, int] = {}
    for r, s, _ in report.witnesses:
        summary[(r, s)] = summary.get((r, s), 0) + 1
    return summary
