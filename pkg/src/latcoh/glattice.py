"""Integral representations of the cyclic group ℤ/m.

Conventions used everywhere downstream:

* an action matrix acts on column vectors; column i is the image of e_i;
* Λʲ uses the lexicographically ordered j-subsets of {0..n-1} as basis;
* hom(U, V) flattens φ (an n_V × n_U matrix) column-major, so
  φ[row, col] sits at position col·n_V + row;
* tensor(U, V) puts e_a ⊗ f_b at position a·n_V + b.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from logging import Logger
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import cyclotomic_poly, divisors, isprime, primefactors, totient
from sympy.abc import x as _x

from .exception import InvalidActionError, UsageError
from .intlinalg import (
    IntegerMatrix,
    Vector,
    block_diagonal,
    determinant,
    kernel_basis,
    kronecker,
)

log: Logger = logging.getLogger(__name__)

Wedge = Tuple[int, ...]
MatrixLike = Union[IntegerMatrix, Sequence[Sequence[int]]]


@dataclass(frozen=True)
class CyclicAction:
    n: int
    m: int
    action: IntegerMatrix
    label: str = ""
    order: int = 1

    @cached_property
    def inverse(self) -> IntegerMatrix:
        return self.action.power(self.order - 1)

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "m": self.m,
            "matrix": self.action.to_rows(),
            "label": self.label,
        }

    def relabel(self, label: str) -> CyclicAction:
        return CyclicAction(self.n, self.m, self.action, label, self.order)


@lru_cache(maxsize=64)
def wedge_basis(n: int, j: int) -> Tuple[Wedge, ...]:
    """Lexicographically ordered j-subsets of {0..n-1}."""
    return tuple(combinations(range(n), j))


@lru_cache(maxsize=64)
def wedge_index(n: int, j: int) -> Dict[Wedge, int]:
    return {w: k for k, w in enumerate(wedge_basis(n, j))}


def sort_sign(seq: Sequence[int]) -> Tuple[int, Wedge]:
    """Sign of the permutation sorting ``seq``, 0 if an index repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions: int = sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


def wedge(
    u: Sequence[int], p: int, v: Sequence[int], q: int, n: int
) -> Vector:
    """u ∧ v for u ∈ ΛᵖL and v ∈ ΛᵠL in wedge-basis coordinates."""
    basis_p: Tuple[Wedge, ...] = wedge_basis(n, p)
    basis_q: Tuple[Wedge, ...] = wedge_basis(n, q)
    if len(u) != len(basis_p) or len(v) != len(basis_q):
        raise UsageError(f"Wedge operand length mismatch [p={p}, q={q}]")
    index: Dict[Wedge, int] = wedge_index(n, p + q) if p + q <= n else {}
    out: List[int] = [0] * len(index)
    for left, a in zip(basis_p, u):
        if not a:
            continue
        for right, b in zip(basis_q, v):
            if not b:
                continue
            sign, merged = sort_sign(left + right)
            if sign:
                out[index[merged]] += sign * a * b
    return tuple(out)


def exterior_matrix(matrix: IntegerMatrix, j: int) -> IntegerMatrix:
    """Λʲ of a square matrix: entry (I, J) is the minor on rows I, cols J."""
    n: int = matrix.rows
    basis: Tuple[Wedge, ...] = wedge_basis(n, j)
    rows: List[List[int]] = matrix.to_rows()
    return IntegerMatrix.from_rows(
        [
            [
                determinant(
                    IntegerMatrix.from_rows(
                        [[rows[i][c] for c in cols] for i in picked], j
                    )
                )
                for cols in basis
            ]
            for picked in basis
        ],
        len(basis),
    )


def make_action(m: int, matrix: MatrixLike, label: str = "") -> CyclicAction:
    """Validates a matrix as the action of the generator of ℤ/m."""
    action: IntegerMatrix = (
        matrix
        if isinstance(matrix, IntegerMatrix)
        else IntegerMatrix.from_rows(matrix)
    )
    if m < 1:
        raise InvalidActionError("group order must be positive", m, label)
    if action.rows != action.cols:
        raise InvalidActionError(
            f"matrix not square {action.shape}", m, label
        )
    if abs(determinant(action)) != 1:
        raise InvalidActionError("determinant is not ±1", m, label)
    order: Optional[int] = next(
        (d for d in divisors(m) if action.power(int(d)).is_identity()), None
    )
    if order is None:
        raise InvalidActionError("matrix^m is not the identity", m, label)
    log.debug(
        "Action validated [Label=%s, N=%s, M=%s, Order=%s]",
        label,
        action.rows,
        m,
        order,
    )
    return CyclicAction(action.rows, m, action, label, int(order))


def _derived(
    a: CyclicAction, matrix: IntegerMatrix, label: str
) -> CyclicAction:
    # functorial images are again actions of ℤ/a.m
    order: int = next(
        int(d) for d in divisors(a.m) if matrix.power(int(d)).is_identity()
    )
    return CyclicAction(matrix.rows, a.m, matrix, label, order)


def is_free_outside_origin(a: CyclicAction) -> bool:
    """True iff no non-trivial group element fixes a non-zero vector."""
    for q in primefactors(a.m):
        fixed: IntegerMatrix = kernel_basis(
            a.action.power(a.m // q) - IntegerMatrix.identity(a.n)
        )
        if fixed.cols:
            log.debug(
                "Fixed vectors found [Label=%s, Prime=%s, Rank=%s]",
                a.label,
                q,
                fixed.cols,
            )
            return False
    return True


@lru_cache(maxsize=256)
def exterior_power(a: CyclicAction, j: int) -> CyclicAction:
    if not 0 <= j <= a.n:
        raise UsageError(f"Exterior degree out of range [j={j}, n={a.n}]")
    return _derived(a, exterior_matrix(a.action, j), f"L{j}({a.label})")


@lru_cache(maxsize=256)
def dual(a: CyclicAction) -> CyclicAction:
    return CyclicAction(
        a.n, a.m, a.inverse.transpose(), f"dual({a.label})", a.order
    )


def _same_group(a: CyclicAction, b: CyclicAction) -> None:
    if a.m != b.m:
        raise InvalidActionError(
            f"group orders differ ({a.m} vs {b.m})", a.m, b.label
        )


def hom_lattice(u: CyclicAction, v: CyclicAction) -> CyclicAction:
    """hom_ℤ(U, V) with g·φ = A_V φ A_U⁻¹, flattened column-major."""
    _same_group(u, v)
    return _derived(
        u,
        kronecker(u.inverse.transpose(), v.action),
        f"hom({u.label},{v.label})",
    )


def direct_sum(a: CyclicAction, b: CyclicAction) -> CyclicAction:
    _same_group(a, b)
    return CyclicAction(
        a.n + b.n,
        a.m,
        block_diagonal(a.action, b.action),
        f"{a.label}+{b.label}",
        _lcm(a.order, b.order),
    )


def tensor(a: CyclicAction, b: CyclicAction) -> CyclicAction:
    _same_group(a, b)
    return _derived(
        a,
        kronecker(a.action, b.action),
        f"{a.label}*{b.label}",
    )


def trivial_lattice(m: int, n: int = 1) -> CyclicAction:
    return make_action(m, IntegerMatrix.identity(n), f"trivial:{m}:{n}")


def sign_lattice() -> CyclicAction:
    return make_action(2, [[-1]], "sign")


def syzygy_lattice(m: int, d: int) -> CyclicAction:
    """ℤG / (1 + t^d + … + t^{m-d}) in the basis e_0 … e_{m-d-1}."""
    if d < 1 or m % d:
        raise UsageError(f"Divisor required [m={m}, d={d}]")
    rank: int = m - d
    columns: List[List[int]] = []
    for i in range(rank - 1):
        col = [0] * rank
        col[i + 1] = 1
        columns.append(col)
    if rank:
        columns.append(
            [-1 if k % d == 0 else 0 for k in range(rank)]
        )
    return make_action(
        m, IntegerMatrix.from_columns(columns, rank), f"syzygy:{m}:{d}"
    )


def cyclotomic_lattice(p: int, r: int) -> CyclicAction:
    """ℤ[ζ_{p^r}] presented as the syzygy lattice with d = p^{r-1}."""
    if not isprime(p) or r < 1:
        raise UsageError(f"Prime power required [p={p}, r={r}]")
    return syzygy_lattice(p**r, p ** (r - 1)).relabel(f"cyclotomic:{p}:{r}")


def gauss_lattice() -> CyclicAction:
    return cyclotomic_lattice(2, 2).relabel("gauss")


def permutation_lattice(m: int, subgroup_order: int) -> CyclicAction:
    """ℤ[G/H] for the subgroup H of order ``subgroup_order``."""
    if subgroup_order < 1 or m % subgroup_order:
        raise UsageError(
            f"Subgroup order must divide m [m={m}, h={subgroup_order}]"
        )
    rank: int = m // subgroup_order
    columns: List[List[int]] = []
    for i in range(rank):
        col = [0] * rank
        col[(i + 1) % rank] = 1
        columns.append(col)
    return make_action(
        m,
        IntegerMatrix.from_columns(columns, rank),
        f"permutation:{m}:{subgroup_order}",
    )


def companion_lattice(m: int, d: int) -> CyclicAction:
    """ℤ[x]/Φ_d(x) with t acting as multiplication by x, for d | m."""
    if d < 1 or m % d:
        raise UsageError(f"Divisor required [m={m}, d={d}]")
    poly = cyclotomic_poly(d, _x, polys=True)
    coeffs: List[int] = [int(c) for c in reversed(poly.all_coeffs())]
    rank: int = int(totient(d))
    columns: List[List[int]] = []
    for i in range(rank - 1):
        col = [0] * rank
        col[i + 1] = 1
        columns.append(col)
    columns.append([-c for c in coeffs[:rank]])
    return make_action(
        m, IntegerMatrix.from_columns(columns, rank), f"companion:{m}:{d}"
    )


def paper_example_3() -> CyclicAction:
    return make_action(4, [[0, 1, 0], [-1, 0, 1], [0, 0, 1]], "paper3")


def paper_example_6() -> CyclicAction:
    return make_action(
        4,
        [
            [0, 1, 0, 0, 0, 0],
            [-1, 0, 1, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, -1, 0, 1],
            [0, 0, 0, 0, -1, 0],
        ],
        "paper6",
    )


def direct_sum_construction(x: CyclicAction) -> CyclicAction:
    """X ⊕ (Λ²X)^∧."""
    return direct_sum(x, dual(exterior_power(x, 2))).relabel(
        f"sumconstruction({x.label})"
    )


def inflate(a: CyclicAction, m: int) -> CyclicAction:
    """The same lattice seen as a ℤ/m-module through ℤ/m → ℤ/a.m."""
    if m < 1 or m % a.m:
        raise UsageError(f"Inflation needs a.m | m [a.m={a.m}, m={m}]")
    return CyclicAction(a.n, m, a.action, f"inflate({a.label},{m})", a.order)


def counterexample(m: int) -> CyclicAction:
    if m % 4:
        raise UsageError(f"Counterexample needs 4 | m [m={m}]")
    example: CyclicAction = paper_example_6()
    if m == 4:
        return example
    return inflate(example, m).relabel(f"counterexample:{m}")


def extension_cocycles(
    top: CyclicAction, bottom: CyclicAction
) -> IntegerMatrix:
    """Basis of the X making [[A_top, X], [0, A_bottom]] of order dividing m.

    Columns are column-major flattenings of n_top × n_bottom matrices.
    """
    _same_group(top, bottom)
    size: int = top.n * bottom.n
    total: IntegerMatrix = IntegerMatrix.zeros(size, size)
    for k in range(top.m):
        total = total + kronecker(
            bottom.action.power(top.m - 1 - k).transpose(),
            top.action.power(k),
        )
    return kernel_basis(total)


def random_action(
    rng: random.Random, m: int, max_rank: int, label: str = ""
) -> CyclicAction:
    """A random valid action of ℤ/m on a lattice of rank 1..max_rank.

    Builds a block sum of companion, permutation and trivial lattices,
    sometimes glues two blocks into an extension, and conjugates the
    result by a small random unimodular matrix.
    """
    target: int = rng.randint(1, max_rank)
    blocks: List[CyclicAction] = []
    rank: int = 0
    while rank < target:
        room: int = target - rank
        choices: List[CyclicAction] = [
            companion_lattice(m, d)
            for d in divisors(m)
            if totient(d) <= room
        ] + [
            permutation_lattice(m, h)
            for h in divisors(m)
            if m // h <= room and h != m
        ]
        block: CyclicAction = rng.choice(choices)
        blocks.append(block)
        rank += block.n
    action: IntegerMatrix = block_diagonal(*(b.action for b in blocks))
    if len(blocks) >= 2 and rng.random() < 0.5:
        action = _glue(rng, blocks[0], blocks[1], action)
    conj, conj_inv = _random_unimodular(rng, rank)
    return make_action(
        m, conj @ action @ conj_inv, label or f"random:{m}:{rank}"
    )


def _glue(
    rng: random.Random,
    top: CyclicAction,
    bottom: CyclicAction,
    action: IntegerMatrix,
) -> IntegerMatrix:
    cocycles: IntegerMatrix = extension_cocycles(top, bottom)
    if not cocycles.cols:
        return action
    flat: List[int] = [0] * cocycles.rows
    for col in cocycles.columns():
        coeff: int = rng.randint(-1, 1)
        flat = [a + coeff * b for a, b in zip(flat, col)]
    rows: List[List[int]] = action.to_rows()
    for col in range(bottom.n):
        for row in range(top.n):
            rows[row][top.n + col] = flat[col * top.n + row]
    return IntegerMatrix.from_rows(rows, action.cols)


def _random_unimodular(
    rng: random.Random, n: int, steps: int = 3
) -> Tuple[IntegerMatrix, IntegerMatrix]:
    conj: IntegerMatrix = IntegerMatrix.identity(n)
    conj_inv: IntegerMatrix = IntegerMatrix.identity(n)
    if n < 2:
        return conj, conj_inv
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        q: int = rng.choice((-1, 1))
        elem = _elementary(n, i, j, q)
        conj = elem @ conj
        conj_inv = conj_inv @ _elementary(n, i, j, -q)
    return conj, conj_inv


def _elementary(n: int, i: int, j: int, q: int) -> IntegerMatrix:
    rows: List[List[int]] = IntegerMatrix.identity(n).to_rows()
    rows[i][j] = q
    return IntegerMatrix.from_rows(rows, n)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
