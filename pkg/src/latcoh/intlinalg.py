"""Exact integer linear algebra.

Matrices are dense, immutable and hold Python integers, so no
computation can overflow. Every routine accepts empty matrices (zero
rows or zero columns); they stand for maps between zero modules.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from logging import Logger
from typing import Iterable, List, Optional, Sequence, Tuple

from .exception import ContractViolationError, UsageError
from .model.common import AbelianGroupStructure

log: Logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
_Rows = List[List[int]]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise UsageError(f"Negative shape [{self.rows}x{self.cols}]")
        if len(self.entries) != self.rows * self.cols:
            raise UsageError(
                "Entry count does not match shape"
                f" [Shape={self.rows}x{self.cols},"
                f" Entries={len(self.entries)}]"
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None
    ) -> IntegerMatrix:
        width: int = len(rows[0]) if rows else (cols or 0)
        entries: List[int] = []
        for row in rows:
            if len(row) != width:
                raise UsageError(f"Ragged matrix rows [{rows}]")
            entries.extend(int(x) for x in row)
        return cls(len(rows), width, tuple(entries))

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[int]], rows: int
    ) -> IntegerMatrix:
        for col in columns:
            if len(col) != rows:
                raise UsageError(
                    f"Column length mismatch [Expected={rows}, {col}]"
                )
        return cls(
            rows,
            len(columns),
            tuple(col[i] for i in range(rows) for col in columns),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(
        cls,
        values: Sequence[int],
        rows: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> IntegerMatrix:
        r: int = len(values) if rows is None else rows
        c: int = len(values) if cols is None else cols
        data: _Rows = [[0] * c for _ in range(r)]
        for k, value in enumerate(values):
            data[k][k] = value
        return _from_work(data, r, c)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j :: self.cols] if self.cols else ()

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix.from_columns(
            [self.row(i) for i in range(self.rows)], self.cols
        )

    def select_columns(self, indices: Iterable[int]) -> IntegerMatrix:
        return IntegerMatrix.from_columns(
            [self.column(j) for j in indices], self.rows
        )

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise UsageError(
                "Vector length mismatch"
                f" [Cols={self.cols}, Length={len(vector)}]"
            )
        support: List[Tuple[int, int]] = [
            (j, x) for j, x in enumerate(vector) if x
        ]
        c: int = self.cols
        e: Tuple[int, ...] = self.entries
        return tuple(
            sum(e[i * c + j] * x for j, x in support)
            for i in range(self.rows)
        )

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise UsageError(
                f"Shape mismatch [{self.shape} @ {other.shape}]"
            )
        cols: List[Vector] = [self.apply(col) for col in other.columns()]
        return IntegerMatrix.from_columns(cols, self.rows)

    def __add__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._same_shape(other)
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: IntegerMatrix) -> IntegerMatrix:
        self._same_shape(other)
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> IntegerMatrix:
        return self.scale(-1)

    def scale(self, factor: int) -> IntegerMatrix:
        return IntegerMatrix(
            self.rows, self.cols, tuple(factor * a for a in self.entries)
        )

    def power(self, exponent: int) -> IntegerMatrix:
        if self.rows != self.cols or exponent < 0:
            raise UsageError(
                f"Power undefined [Shape={self.shape}, Exp={exponent}]"
            )
        result: IntegerMatrix = IntegerMatrix.identity(self.rows)
        base: IntegerMatrix = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntegerMatrix.identity(
            self.rows
        )

    def _same_shape(self, other: IntegerMatrix) -> None:
        if self.shape != other.shape:
            raise UsageError(f"Shape mismatch [{self.shape}, {other.shape}]")


def hstack(rows: int, *blocks: IntegerMatrix) -> IntegerMatrix:
    columns: List[Vector] = []
    for block in blocks:
        if block.rows != rows:
            raise UsageError(f"Row mismatch [{rows}, {block.shape}]")
        columns.extend(block.columns())
    return IntegerMatrix.from_columns(columns, rows)


def block_diagonal(*blocks: IntegerMatrix) -> IntegerMatrix:
    rows: int = sum(b.rows for b in blocks)
    cols: int = sum(b.cols for b in blocks)
    data: _Rows = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for block in blocks:
        for i in range(block.rows):
            data[r0 + i][c0 : c0 + block.cols] = block.row(i)
        r0 += block.rows
        c0 += block.cols
    return _from_work(data, rows, cols)


def kronecker(left: IntegerMatrix, right: IntegerMatrix) -> IntegerMatrix:
    rows: int = left.rows * right.rows
    cols: int = left.cols * right.cols
    data: _Rows = [[0] * cols for _ in range(rows)]
    for i1 in range(left.rows):
        for j1 in range(left.cols):
            a: int = left[i1, j1]
            if not a:
                continue
            for i2 in range(right.rows):
                row: List[int] = data[i1 * right.rows + i2]
                for j2 in range(right.cols):
                    row[j1 * right.cols + j2] = a * right[i2, j2]
    return _from_work(data, rows, cols)


def determinant(matrix: IntegerMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n: int = matrix.rows
    if n != matrix.cols:
        raise UsageError(f"Determinant of non-square matrix {matrix.shape}")
    if n == 0:
        return 1
    a: _Rows = matrix.to_rows()
    sign: int = 1
    prev: int = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U·M·V = D with D diagonal, d₁ | d₂ | … | d_r and zeros trailing."""

    u: IntegerMatrix
    d: IntegerMatrix
    v: IntegerMatrix
    u_inv: IntegerMatrix
    v_inv: IntegerMatrix
    rank: int

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        return tuple(self.d[k, k] for k in range(self.rank))


class _Elimination:
    def __init__(self, matrix: IntegerMatrix, track: bool):
        self.rows: int = matrix.rows
        self.cols: int = matrix.cols
        self.a: _Rows = matrix.to_rows()
        self.track: bool = track
        if track:
            self.u: _Rows = _identity_work(self.rows)
            self.u_inv: _Rows = _identity_work(self.rows)
            self.v: _Rows = _identity_work(self.cols)
            self.v_inv: _Rows = _identity_work(self.cols)

    def add_row(self, target: int, source: int, q: int) -> None:
        _axpy(self.a[target], self.a[source], q)
        if self.track:
            _axpy(self.u[target], self.u[source], q)
            for row in self.u_inv:
                row[source] -= q * row[target]

    def add_col(self, target: int, source: int, q: int) -> None:
        for row in self.a:
            row[target] += q * row[source]
        if self.track:
            for row in self.v:
                row[target] += q * row[source]
            _axpy(self.v_inv[source], self.v_inv[target], -q)

    def swap_rows(self, i: int, k: int) -> None:
        if i == k:
            return
        self.a[i], self.a[k] = self.a[k], self.a[i]
        if self.track:
            self.u[i], self.u[k] = self.u[k], self.u[i]
            for row in self.u_inv:
                row[i], row[k] = row[k], row[i]

    def swap_cols(self, j: int, k: int) -> None:
        if j == k:
            return
        for row in self.a:
            row[j], row[k] = row[k], row[j]
        if self.track:
            for row in self.v:
                row[j], row[k] = row[k], row[j]
            self.v_inv[j], self.v_inv[k] = self.v_inv[k], self.v_inv[j]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        if self.track:
            self.u[i] = [-x for x in self.u[i]]
            for row in self.u_inv:
                row[i] = -row[i]

    def diagonalize(self) -> int:
        a: _Rows = self.a
        t: int = 0
        while t < min(self.rows, self.cols):
            pivot: Optional[Tuple[int, int]] = self._smallest(t)
            if pivot is None:
                break
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            while True:
                p: int = a[t][t]
                for i in range(t + 1, self.rows):
                    if a[i][t]:
                        self.add_row(i, t, -(a[i][t] // p))
                for j in range(t + 1, self.cols):
                    if a[t][j]:
                        self.add_col(j, t, -(a[t][j] // p))
                if self._bring_remainder(t):
                    continue
                bad: Optional[int] = self._indivisible_row(t)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)
            t += 1
        return t

    def _smallest(self, t: int) -> Optional[Tuple[int, int]]:
        best: Optional[Tuple[int, int]] = None
        best_abs: int = 0
        for i in range(t, self.rows):
            row: List[int] = self.a[i]
            for j in range(t, self.cols):
                x: int = abs(row[j])
                if x and (best is None or x < best_abs):
                    best, best_abs = (i, j), x
                    if x == 1:
                        return best
        return best

    def _bring_remainder(self, t: int) -> bool:
        """Moves the smallest leftover entry of row/column t to (t, t)."""
        a: _Rows = self.a
        best: Optional[Tuple[int, int]] = None
        best_abs: int = 0
        for i in range(t + 1, self.rows):
            if a[i][t] and (best is None or abs(a[i][t]) < best_abs):
                best, best_abs = (i, t), abs(a[i][t])
        for j in range(t + 1, self.cols):
            if a[t][j] and (best is None or abs(a[t][j]) < best_abs):
                best, best_abs = (t, j), abs(a[t][j])
        if best is None:
            return False
        self.swap_rows(t, best[0])
        self.swap_cols(t, best[1])
        return True

    def _indivisible_row(self, t: int) -> Optional[int]:
        p: int = self.a[t][t]
        for i in range(t + 1, self.rows):
            row: List[int] = self.a[i]
            for j in range(t + 1, self.cols):
                if row[j] % p:
                    return i
        return None


def smith_normal_form(matrix: IntegerMatrix) -> SmithDecomposition:
    """Computes U, D, V with U·M·V = D.

    Pivoting always picks the entry of smallest absolute value in the
    remaining block, first in row-major order, so output is
    reproducible.
    """
    work = _Elimination(matrix, track=True)
    rank: int = work.diagonalize()
    log.debug(
        "Smith normal form computed [Shape=%s, Rank=%s]", matrix.shape, rank
    )
    return SmithDecomposition(
        u=_from_work(work.u, matrix.rows, matrix.rows),
        d=_from_work(work.a, matrix.rows, matrix.cols),
        v=_from_work(work.v, matrix.cols, matrix.cols),
        u_inv=_from_work(work.u_inv, matrix.rows, matrix.rows),
        v_inv=_from_work(work.v_inv, matrix.cols, matrix.cols),
        rank=rank,
    )


def invariant_factors(matrix: IntegerMatrix) -> Tuple[int, ...]:
    work = _Elimination(matrix, track=False)
    rank: int = work.diagonalize()
    return tuple(work.a[k][k] for k in range(rank))


def cokernel_structure(matrix: IntegerMatrix) -> AbelianGroupStructure:
    """Structure of ℤ^rows / im(matrix)."""
    factors: Tuple[int, ...] = invariant_factors(matrix)
    return AbelianGroupStructure.model_construct(
        free_rank=matrix.rows - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )


def hermite_normal_form(matrix: IntegerMatrix) -> IntegerMatrix:
    """Row-style Hermite normal form H = W·M with W unimodular.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    Zero rows are kept at the bottom.
    """
    a: _Rows = matrix.to_rows()
    rows, cols = matrix.shape
    top: int = 0
    for col in range(cols):
        if top == rows:
            break
        while True:
            live: List[int] = [i for i in range(top, rows) if a[i][col]]
            if not live:
                break
            pivot: int = min(live, key=lambda i: (abs(a[i][col]), i))
            a[top], a[pivot] = a[pivot], a[top]
            reduced: bool = True
            for i in range(top + 1, rows):
                if a[i][col]:
                    _axpy(a[i], a[top], -(a[i][col] // a[top][col]))
                    reduced = reduced and not a[i][col]
            if reduced:
                break
        if not a[top][col]:
            continue
        if a[top][col] < 0:
            a[top] = [-x for x in a[top]]
        for i in range(top):
            _axpy(a[i], a[top], -(a[i][col] // a[top][col]))
        top += 1
    return _from_work(a, rows, cols)


def kernel_basis(matrix: IntegerMatrix) -> IntegerMatrix:
    """Saturated ℤ-basis of {x : Mx = 0}, as columns in Hermite form."""
    snf: SmithDecomposition = smith_normal_form(matrix)
    basis: IntegerMatrix = snf.v.select_columns(range(snf.rank, matrix.cols))
    if basis.cols == 0:
        return basis
    normal: IntegerMatrix = hermite_normal_form(basis.transpose())
    return IntegerMatrix.from_columns(
        [normal.row(i) for i in range(basis.cols)], matrix.cols
    )


def image_basis(matrix: IntegerMatrix) -> IntegerMatrix:
    """ℤ-basis of the column span of M."""
    snf: SmithDecomposition = smith_normal_form(matrix)
    return IntegerMatrix.from_columns(
        [
            tuple(snf.d[k, k] * x for x in snf.u_inv.column(k))
            for k in range(snf.rank)
        ],
        matrix.rows,
    )


def solve_integral(
    matrix: IntegerMatrix, b: Sequence[int]
) -> Optional[Vector]:
    """Returns some integer x with Mx = b, or None if there is none."""
    if len(b) != matrix.rows:
        raise UsageError(
            "Right-hand side length mismatch"
            f" [Rows={matrix.rows}, Length={len(b)}]"
        )
    return _solve_with(smith_normal_form(matrix), b)


def _solve_with(snf: SmithDecomposition, b: Sequence[int]) -> Optional[Vector]:
    c: Vector = snf.u.apply(b)
    y: List[int] = [0] * snf.v.rows
    for k, value in enumerate(c):
        if k < snf.rank:
            d: int = snf.d[k, k]
            if value % d:
                return None
            y[k] = value // d
        elif value:
            return None
    return snf.v.apply(y)


def inverse_unimodular(matrix: IntegerMatrix) -> IntegerMatrix:
    snf: SmithDecomposition = smith_normal_form(matrix)
    if matrix.rows != matrix.cols or snf.invariant_factors != (1,) * (
        matrix.rows
    ):
        raise UsageError(f"Matrix is not unimodular [{matrix.to_rows()}]")
    # D = I, so M⁻¹ = V·U
    return snf.v @ snf.u


@dataclass(frozen=True)
class SubquotientPresentation:
    """numerator span / denominator span inside ℤ^ambient_rank.

    Structure coordinates come from the Smith form of the denominator
    expressed in numerator coordinates; torsion coordinates precede the
    free ones, matching ``structure.factors``.
    """

    ambient_rank: int
    numerator_basis: IntegerMatrix
    denominator_basis: IntegerMatrix
    structure: AbelianGroupStructure
    to_structure: IntegerMatrix = field(repr=False)
    from_structure: IntegerMatrix = field(repr=False)
    kept: Tuple[int, ...] = field(repr=False)
    numerator_smith: SmithDecomposition = field(repr=False)

    def numerator_coordinates(self, vector: Sequence[int]) -> Vector:
        solved: Optional[Vector] = _solve_with(self.numerator_smith, vector)
        if solved is None:
            raise ContractViolationError(
                "coordinates", f"vector {tuple(vector)} not in numerator"
            )
        return solved

    def coordinates(self, vector: Sequence[int]) -> Vector:
        """Class of an ambient vector in structure coordinates."""
        full: Vector = self.to_structure.apply(
            self.numerator_coordinates(vector)
        )
        return tuple(
            full[k] % mod if mod else full[k]
            for k, mod in zip(self.kept, self.structure.factors)
        )

    def lift(self, coords: Sequence[int]) -> Vector:
        """Ambient representative of a class given in structure coordinates."""
        if len(coords) != self.structure.size:
            raise UsageError(
                "Coordinate length mismatch"
                f" [Expected={self.structure.size}, Length={len(coords)}]"
            )
        full: List[int] = [0] * self.numerator_basis.cols
        for k, value in zip(self.kept, coords):
            full[k] = value
        return self.numerator_basis.apply(self.from_structure.apply(full))

    def is_zero_class(self, vector: Sequence[int]) -> bool:
        return not any(self.coordinates(vector))


def presentation(
    ambient_rank: int, numerator: IntegerMatrix, denominator: IntegerMatrix
) -> SubquotientPresentation:
    """Presents span(numerator) / span(denominator).

    ``numerator`` must have linearly independent columns; every
    denominator column must lie in its span.
    """
    num_snf: SmithDecomposition = smith_normal_form(numerator)
    if num_snf.rank != numerator.cols:
        raise ContractViolationError(
            "presentation", "numerator columns are not independent"
        )
    coords: List[Vector] = []
    for col in denominator.columns():
        solved: Optional[Vector] = _solve_with(num_snf, col)
        if solved is None:
            raise ContractViolationError(
                "presentation",
                f"denominator column {col} outside numerator span",
            )
        coords.append(solved)
    relation: IntegerMatrix = IntegerMatrix.from_columns(
        coords, numerator.cols
    )
    rel_snf: SmithDecomposition = smith_normal_form(relation)
    diag: List[int] = [
        rel_snf.d[k, k] if k < rel_snf.rank else 0
        for k in range(numerator.cols)
    ]
    kept: Tuple[int, ...] = tuple(k for k, d in enumerate(diag) if d != 1)
    structure = AbelianGroupStructure.model_construct(
        free_rank=sum(1 for d in diag if d == 0),
        torsion=tuple(d for d in diag if d > 1),
    )
    return SubquotientPresentation(
        ambient_rank=ambient_rank,
        numerator_basis=numerator,
        denominator_basis=denominator,
        structure=structure,
        to_structure=rel_snf.u,
        from_structure=rel_snf.u_inv,
        kept=kept,
        numerator_smith=num_snf,
    )


def subquotient(
    ambient_rank: int, x: IntegerMatrix, y: IntegerMatrix
) -> SubquotientPresentation:
    """Presents ker X / im Y inside ℤ^ambient_rank."""
    if x.cols != ambient_rank or y.rows != ambient_rank:
        raise UsageError(
            "Subquotient shape mismatch"
            f" [Ambient={ambient_rank}, X={x.shape}, Y={y.shape}]"
        )
    if not (x @ y).is_zero():
        raise ContractViolationError("subquotient", "X·Y is not zero")
    return presentation(ambient_rank, kernel_basis(x), y)


def span_quotient(
    ambient_rank: int, generators: IntegerMatrix, relations: IntegerMatrix
) -> SubquotientPresentation:
    """Presents span(generators) / span(relations) for any spanning sets."""
    return presentation(ambient_rank, image_basis(generators), relations)


def induced_map(
    phi: IntegerMatrix,
    src: SubquotientPresentation,
    dst: SubquotientPresentation,
) -> IntegerMatrix:
    """Matrix of the map src → dst induced by φ, in structure coordinates."""
    if phi.shape != (dst.ambient_rank, src.ambient_rank):
        raise UsageError(
            "Induced map shape mismatch"
            f" [Phi={phi.shape}, Src={src.ambient_rank},"
            f" Dst={dst.ambient_rank}]"
        )
    try:
        for col in src.numerator_basis.columns():
            dst.numerator_coordinates(phi.apply(col))
        for col in src.denominator_basis.columns():
            if not dst.is_zero_class(phi.apply(col)):
                raise ContractViolationError(
                    "induced_map", f"denominator column {col} not preserved"
                )
    except ContractViolationError as exc:
        log.debug("Incompatible map [%s]", exc)
        raise ContractViolationError(
            "induced_map", "map does not respect the subquotients"
        ) from exc
    columns: List[Vector] = []
    for k in range(src.structure.size):
        unit: List[int] = [0] * src.structure.size
        unit[k] = 1
        columns.append(dst.coordinates(phi.apply(src.lift(unit))))
    return IntegerMatrix.from_columns(columns, dst.structure.size)


def _identity_work(n: int) -> _Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _axpy(target: List[int], source: List[int], q: int) -> None:
    if q:
        for k, x in enumerate(source):
            if x:
                target[k] += q * x


def _from_work(data: _Rows, rows: int, cols: int) -> IntegerMatrix:
    return IntegerMatrix(rows, cols, tuple(x for row in data for x in row))
