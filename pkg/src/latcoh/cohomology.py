"""Group and Tate cohomology of ℤ/m with lattice coefficients.

Uses the 2-periodic resolution with maps 1 − t and the norm element
N = 1 + t + … + t^{m-1}. A small bar-complex computation is provided as
an independent oracle.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from logging import Logger
from math import prod
from typing import Dict, List, Optional, Tuple

from .exception import (
    InvariantViolationError,
    ResourceLimitError,
    UsageError,
)
from .glattice import (
    CyclicAction,
    dual,
    exterior_power,
    is_free_outside_origin,
)
from .intlinalg import (
    IntegerMatrix,
    SubquotientPresentation,
    cokernel_structure,
    kernel_basis,
    subquotient,
)
from .model.common import AbelianGroupStructure

log: Logger = logging.getLogger(__name__)

BAR_GUARD: int = 20000


@dataclass(frozen=True)
class NormOperators:
    norm: IntegerMatrix
    aug: IntegerMatrix


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    structure: AbelianGroupStructure
    presentation: SubquotientPresentation


@lru_cache(maxsize=256)
def operators(a: CyclicAction) -> NormOperators:
    norm: IntegerMatrix = IntegerMatrix.zeros(a.n, a.n)
    power: IntegerMatrix = IntegerMatrix.identity(a.n)
    for _ in range(a.m):
        norm = norm + power
        power = power @ a.action
    aug: IntegerMatrix = a.action - IntegerMatrix.identity(a.n)
    if not (norm @ aug).is_zero() or not (aug @ norm).is_zero():
        raise InvariantViolationError("norm-aug", a.label)
    return NormOperators(norm, aug)


def _even(a: CyclicAction) -> SubquotientPresentation:
    ops: NormOperators = operators(a)
    return subquotient(a.n, ops.aug, ops.norm)


def _odd(a: CyclicAction) -> SubquotientPresentation:
    ops: NormOperators = operators(a)
    return subquotient(a.n, ops.norm, ops.aug)


@lru_cache(maxsize=1024)
def group_cohomology(a: CyclicAction, i: int) -> CohomologyGroup:
    """Hⁱ(G; M) for i ≥ 0."""
    if i < 0:
        raise UsageError(f"Negative cohomological degree [i={i}]")
    if i == 0:
        pres: SubquotientPresentation = subquotient(
            a.n, operators(a).aug, IntegerMatrix.zeros(a.n, 0)
        )
    elif i % 2:
        pres = _odd(a)
    else:
        pres = _even(a)
    log.debug(
        "Cohomology computed [Label=%s, Degree=%s, Structure=%s]",
        a.label,
        i,
        pres.structure,
    )
    return CohomologyGroup(i, pres.structure, pres)


@lru_cache(maxsize=1024)
def tate(a: CyclicAction, i: int) -> CohomologyGroup:
    """Ĥⁱ(G; M) for any integer i."""
    pres: SubquotientPresentation = _odd(a) if i % 2 else _even(a)
    return CohomologyGroup(i, pres.structure, pres)


def _finite_order(a: CyclicAction, i: int) -> int:
    structure: AbelianGroupStructure = tate(a, i).structure
    if not structure.is_finite():
        raise InvariantViolationError(
            "finite Tate cohomology", a.label, (i,)
        )
    return prod(structure.torsion)


def h_hat(a: CyclicAction) -> Fraction:
    """|Ĥ⁰(G; M)| / |Ĥ¹(G; M)|."""
    return Fraction(_finite_order(a, 0), _finite_order(a, 1))


def homological_euler_h(a: CyclicAction) -> Fraction:
    """∏_j ĥ(Λʲ L^∧)^{(-1)^j}."""
    value: Fraction = Fraction(1)
    coefficients: CyclicAction = dual(a)
    for j in range(a.n + 1):
        factor: Fraction = h_hat(exterior_power(coefficients, j))
        value = value * factor if j % 2 == 0 else value / factor
    return value


def tate_table(
    a: CyclicAction, jmax: Optional[int] = None
) -> List[Tuple[int, int, AbelianGroupStructure]]:
    """Cells Ĥⁱ(G; Λʲ L^∧) for i ∈ {0, 1} and j = 0..jmax."""
    top: int = a.n if jmax is None else min(jmax, a.n)
    coefficients: CyclicAction = dual(a)
    return [
        (i, j, tate(exterior_power(coefficients, j), i).structure)
        for j in range(top + 1)
        for i in (0, 1)
    ]


def tate_vanishing_violations(
    a: CyclicAction, jmax: Optional[int] = None
) -> List[Tuple[int, int]]:
    """Cells with i + j odd whose Tate group is non-zero."""
    violations: List[Tuple[int, int]] = [
        (i, j)
        for i, j, structure in tate_table(a, jmax)
        if (i + j) % 2 and not structure.is_trivial()
    ]
    if violations and is_free_outside_origin(a):
        log.warning(
            "Vanishing violated on a free action [Label=%s, Cells=%s]",
            a.label,
            violations,
        )
    return violations


def bar_oracle(a: CyclicAction, i: int) -> AbelianGroupStructure:
    """Hⁱ(G; M) from normalized inhomogeneous bar cochains, i ≤ 3.

    For i ≥ 1 the group is finite, so ker δⁱ is the saturation of
    im δⁱ⁻¹ and Hⁱ is the torsion of coker δⁱ⁻¹.
    """
    if not 0 <= i <= 3:
        raise UsageError(f"Bar oracle degree out of range [i={i}]")
    size: int = a.m**i * a.n
    if size > BAR_GUARD:
        raise ResourceLimitError("bar cochains", size, BAR_GUARD)
    if i == 0:
        return AbelianGroupStructure.model_construct(
            free_rank=kernel_basis(_coboundary(a, 0)).cols, torsion=()
        )
    coker: AbelianGroupStructure = cokernel_structure(_coboundary(a, i - 1))
    return AbelianGroupStructure.model_construct(
        free_rank=0, torsion=coker.torsion
    )


def _coboundary(a: CyclicAction, i: int) -> IntegerMatrix:
    """δⁱ: Cⁱ → Cⁱ⁺¹ on normalized cochains G̅ⁱ → M, G̅ = G ∖ {1}."""
    m, n = a.m, a.n
    powers: List[IntegerMatrix] = [a.action.power(k) for k in range(m)]
    sources: List[Tuple[int, ...]] = list(product(range(1, m), repeat=i))
    targets: List[Tuple[int, ...]] = list(product(range(1, m), repeat=i + 1))
    column: Dict[Tuple[int, ...], int] = {
        g: k * n for k, g in enumerate(sources)
    }
    rows: List[List[int]] = []
    for g in targets:
        block: List[List[int]] = [[0] * (len(sources) * n) for _ in range(n)]
        base: int = column[g[1:]]
        acting: IntegerMatrix = powers[g[0]]
        for c in range(n):
            for d in range(n):
                block[c][base + d] += acting[c, d]
        for r in range(1, i + 1):
            merged: int = (g[r - 1] + g[r]) % m
            if not merged:
                continue
            key: Tuple[int, ...] = g[: r - 1] + (merged,) + g[r + 1 :]
            for c in range(n):
                block[c][column[key] + c] += (-1) ** r
        last: int = column[g[:i]]
        for c in range(n):
            block[c][last + c] += (-1) ** (i + 1)
        rows.extend(block)
    return IntegerMatrix.from_rows(rows, len(sources) * n)
