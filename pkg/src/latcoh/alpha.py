"""Free-group computation of the derivation δ: L → Λ²L and the classes α_s.

A lift f: F_n → F_n of the inverse action is iterated m times; the
elements f^m(x_i)·x_i⁻¹ lie in the commutator subgroup and their classes
modulo the third lower central term give the columns of δ. The
iteration runs on degree-2 Magnus truncations, which represent F_n/Γ₃
exactly; iterating literal words is kept as a cross-check.

Words are tuples of signed generator indices: ``g`` stands for x_g and
``-g`` for x_g⁻¹, with g in 1..n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from logging import Logger
from typing import Iterable, List, Optional, Sequence, Tuple

from .cohomology import operators
from .exception import (
    ContractViolationError,
    InvariantViolationError,
    ResourceLimitError,
    UsageError,
)
from .glattice import (
    CyclicAction,
    dual,
    exterior_matrix,
    exterior_power,
    hom_lattice,
    sort_sign,
    tensor,
    trivial_lattice,
    wedge_basis,
    wedge_index,
)
from .intlinalg import IntegerMatrix, Vector, kernel_basis, solve_integral

log: Logger = logging.getLogger(__name__)

DEFAULT_WORD_CAP: int = 10**6
CONVENTION_SIGN: int = -1


@dataclass(frozen=True)
class FreeWord:
    letters: Tuple[int, ...] = ()

    @classmethod
    def parse(
        cls, pairs: Iterable[Tuple[int, int]], n: Optional[int] = None
    ) -> FreeWord:
        """Builds a reduced word from (generator, ±1) pairs."""
        letters: List[int] = []
        for gen, exp in pairs:
            if exp not in (1, -1):
                raise UsageError(f"Exponent must be ±1 [{gen}, {exp}]")
            letters.append(gen * exp)
        return word_reduce(FreeWord(tuple(letters)), n=n)

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((abs(g), 1 if g > 0 else -1) for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(
            f"x{g}" if g > 0 else f"x{-g}^-1" for g in self.letters
        )


def _check_letters(letters: Iterable[int], n: Optional[int]) -> None:
    for g in letters:
        if g == 0 or (n is not None and abs(g) > n):
            raise UsageError(f"Generator index out of range [{g}, n={n}]")


def word_reduce(*words: FreeWord, n: Optional[int] = None) -> FreeWord:
    """Concatenates and freely reduces."""
    stack: List[int] = []
    for word in words:
        _check_letters(word.letters, n)
        for g in word.letters:
            if stack and stack[-1] == -g:
                stack.pop()
            else:
                stack.append(g)
    return FreeWord(tuple(stack))


def word_multiply(
    left: FreeWord, right: FreeWord, n: Optional[int] = None
) -> FreeWord:
    return word_reduce(left, right, n=n)


def word_invert(word: FreeWord) -> FreeWord:
    return FreeWord(tuple(-g for g in reversed(word.letters)))


@dataclass(frozen=True)
class FreeEndomorphism:
    images: Tuple[FreeWord, ...]

    @property
    def n(self) -> int:
        return len(self.images)

    def abelianization(self) -> IntegerMatrix:
        """Exponent-sum matrix; column i is the image of e_i."""
        columns: List[List[int]] = []
        for image in self.images:
            col = [0] * self.n
            for g in image.letters:
                col[abs(g) - 1] += 1 if g > 0 else -1
            columns.append(col)
        return IntegerMatrix.from_columns(columns, self.n)

    def apply(self, word: FreeWord, cap: int = DEFAULT_WORD_CAP) -> FreeWord:
        _check_letters(word.letters, self.n)
        inverses: List[Tuple[int, ...]] = [
            word_invert(image).letters for image in self.images
        ]
        stack: List[int] = []
        for g in word.letters:
            image: Tuple[int, ...] = (
                self.images[g - 1].letters if g > 0 else inverses[-g - 1]
            )
            for h in image:
                if stack and stack[-1] == -h:
                    stack.pop()
                else:
                    stack.append(h)
            if len(stack) > cap:
                log.warning(
                    "Word length cap exceeded [Length=%s, Cap=%s]",
                    len(stack),
                    cap,
                )
                raise ResourceLimitError("free word length", len(stack), cap)
        return FreeWord(tuple(stack))

    def compose(
        self, other: FreeEndomorphism, cap: int = DEFAULT_WORD_CAP
    ) -> FreeEndomorphism:
        """self ∘ other."""
        return FreeEndomorphism(
            tuple(self.apply(image, cap) for image in other.images)
        )


def endo_iterate_apply(
    f: FreeEndomorphism,
    k: int,
    word: FreeWord,
    cap: int = DEFAULT_WORD_CAP,
) -> FreeWord:
    if k < 0:
        raise UsageError(f"Iteration count must be non-negative [k={k}]")
    for _ in range(k):
        word = f.apply(word, cap)
    return word


def lift_has_order(
    f: FreeEndomorphism, m: int, cap: int = DEFAULT_WORD_CAP
) -> bool:
    """True iff f^m fixes every generator."""
    return all(
        endo_iterate_apply(f, m, FreeWord((g,)), cap).letters == (g,)
        for g in range(1, f.n + 1)
    )


def canonical_lift(
    a: CyclicAction, descending: bool = False
) -> FreeEndomorphism:
    """x_i ↦ x_1^{c_1}⋯x_n^{c_n}, c the i-th column of A⁻¹."""
    order: Sequence[int] = (
        range(a.n, 0, -1) if descending else range(1, a.n + 1)
    )
    images: List[FreeWord] = []
    for col in a.inverse.columns():
        letters: List[int] = []
        for g in order:
            c: int = col[g - 1]
            letters.extend([g if c > 0 else -g] * abs(c))
        images.append(FreeWord(tuple(letters)))
    return FreeEndomorphism(tuple(images))


def syzygy_lift(m: int, d: int) -> FreeEndomorphism:
    """The order-m lift of the syzygy lattice ℤG/(1 + t^d + … + t^{m-d})."""
    rank: int = m - d
    images: List[FreeWord] = [FreeWord((i + 1,)) for i in range(1, rank)]
    if rank:
        images.append(
            FreeWord(tuple(-(k + 1) for k in range(0, rank, d)))
        )
    return FreeEndomorphism(tuple(images))


@dataclass(frozen=True)
class MagnusTruncation:
    """1 + Σ linear_g X_g + Σ quadratic_ij X_i X_j modulo degree 3.

    These are exactly the elements of F_n/Γ₃ under the Magnus embedding.
    """

    linear: Vector
    quadratic: IntegerMatrix

    @classmethod
    def identity(cls, n: int) -> MagnusTruncation:
        return cls((0,) * n, IntegerMatrix.zeros(n, n))

    @classmethod
    def letter(cls, letter: int, n: int) -> MagnusTruncation:
        return magnus(FreeWord((letter,)), n)

    @property
    def n(self) -> int:
        return len(self.linear)

    def __mul__(self, other: MagnusTruncation) -> MagnusTruncation:
        return MagnusTruncation(
            tuple(x + y for x, y in zip(self.linear, other.linear)),
            self.quadratic
            + other.quadratic
            + _outer(self.linear, other.linear),
        )

    def inverse(self) -> MagnusTruncation:
        return MagnusTruncation(
            tuple(-x for x in self.linear),
            _outer(self.linear, self.linear) - self.quadratic,
        )


def _outer(left: Sequence[int], right: Sequence[int]) -> IntegerMatrix:
    return IntegerMatrix.from_rows(
        [[x * y for y in right] for x in left], len(right)
    )


@dataclass(frozen=True)
class TruncatedEndomorphism:
    """An endomorphism of F_n acting on F_n/Γ₃.

    Stored as the truncated images of the generators; applying it never
    grows anything but the integer entries.
    """

    images: Tuple[MagnusTruncation, ...]

    @classmethod
    def of(cls, f: FreeEndomorphism) -> TruncatedEndomorphism:
        return cls(tuple(magnus(image, f.n) for image in f.images))

    @property
    def n(self) -> int:
        return len(self.images)

    def apply(self, element: MagnusTruncation) -> MagnusTruncation:
        n: int = self.n
        if element.n != n:
            raise UsageError(
                f"Rank mismatch [Expected={n}, Element={element.n}]"
            )
        lin: List[int] = [0] * n
        quad: List[List[int]] = [[0] * n for _ in range(n)]
        for g, coeff in enumerate(element.linear):
            if not coeff:
                continue
            image: MagnusTruncation = self.images[g]
            for k in range(n):
                lin[k] += coeff * image.linear[k]
                for t in range(n):
                    quad[k][t] += coeff * image.quadratic[k, t]
        for i in range(n):
            for j in range(n):
                coeff = element.quadratic[i, j]
                if not coeff:
                    continue
                left: Vector = self.images[i].linear
                right: Vector = self.images[j].linear
                for k in range(n):
                    if left[k]:
                        for t in range(n):
                            quad[k][t] += coeff * left[k] * right[t]
        return MagnusTruncation(tuple(lin), IntegerMatrix.from_rows(quad, n))

    def iterate(self, k: int, element: MagnusTruncation) -> MagnusTruncation:
        if k < 0:
            raise UsageError(f"Iteration count must be non-negative [k={k}]")
        for _ in range(k):
            element = self.apply(element)
        return element


def magnus(word: FreeWord, n: Optional[int] = None) -> MagnusTruncation:
    """Degree ≤ 2 part of the Magnus expansion x_g ↦ 1 + X_g."""
    size: int = n if n is not None else max(
        (abs(g) for g in word.letters), default=0
    )
    _check_letters(word.letters, size)
    lin: List[int] = [0] * size
    quad: List[List[int]] = [[0] * size for _ in range(size)]
    for letter in word.letters:
        g: int = abs(letter) - 1
        if letter > 0:
            for i in range(size):
                quad[i][g] += lin[i]
            lin[g] += 1
        else:
            quad[g][g] += 1
            for i in range(size):
                quad[i][g] -= lin[i]
            lin[g] -= 1
    return MagnusTruncation(tuple(lin), IntegerMatrix.from_rows(quad, size))


def lcs_class(word: FreeWord, n: int) -> Vector:
    """Class of a commutator-subgroup word in Γ₂/Γ₃ ≅ Λ²ℤⁿ.

    [x_i, x_j] maps to e_i∧e_j.
    """
    return truncated_class(magnus(word, n), "lcs_class")


def truncated_class(
    element: MagnusTruncation, caller: str = "truncated_class"
) -> Vector:
    if any(element.linear):
        raise ContractViolationError(
            caller, f"element has exponent sums {element.linear}"
        )
    return tuple(
        element.quadratic[i, j] for i, j in wedge_basis(element.n, 2)
    )


@dataclass(frozen=True)
class AlphaData:
    n: int
    delta: IntegerMatrix
    alpha1_wedge: IntegerMatrix
    sign: int = CONVENTION_SIGN

    def alpha_s_wedge(self, s: int) -> IntegerMatrix:
        """Derived map ΛˢL → Λ^{s+1}L."""
        return _alpha_s_wedge(self, s)

    def alpha_s(self, s: int) -> IntegerMatrix:
        """α_s: Λ^{s+1}L^∧ → ΛˢL^∧, the transpose of alpha_s_wedge."""
        return self.alpha_s_wedge(s).transpose()


@lru_cache(maxsize=256)
def _alpha_s_wedge(data: AlphaData, s: int) -> IntegerMatrix:
    n: int = data.n
    if not 0 <= s <= n:
        raise UsageError(f"Degree out of range [s={s}, n={n}]")
    source = wedge_basis(n, s)
    target_size: int = len(wedge_basis(n, s + 1)) if s + 1 <= n else 0
    index = wedge_index(n, s + 1) if s + 1 <= n else {}
    pairs = wedge_basis(n, 2)
    columns: List[List[int]] = []
    for wedge_ in source:
        out: List[int] = [0] * target_size
        if s >= 1:
            for pos, i in enumerate(wedge_):
                image: Vector = data.alpha1_wedge.column(i)
                for (a, b), coeff in zip(pairs, image):
                    if not coeff:
                        continue
                    sign, merged = sort_sign(
                        wedge_[:pos] + (a, b) + wedge_[pos + 1 :]
                    )
                    if sign:
                        out[index[merged]] += (-1) ** pos * sign * coeff
        columns.append(out)
    return IntegerMatrix.from_columns(columns, target_size)


def compute_alpha(
    a: CyclicAction,
    word_cap: int = DEFAULT_WORD_CAP,
    sign: int = CONVENTION_SIGN,
    descending: bool = False,
) -> AlphaData:
    """δ from the lift, α₁^∧ = sign·δ, equivariance checked.

    The lift is iterated in F_n/Γ₃; ``word_cap`` bounds the lengths of
    the lift's generator images.
    """
    return _compute_alpha(a, word_cap, sign, descending)


@lru_cache(maxsize=128)
def _compute_alpha(
    a: CyclicAction, word_cap: int, sign: int, descending: bool
) -> AlphaData:
    if sign not in (1, -1):
        raise UsageError(f"Convention sign must be ±1 [{sign}]")
    lift: FreeEndomorphism = canonical_lift(a, descending)
    _check_lift_length(lift, word_cap)
    truncated: TruncatedEndomorphism = TruncatedEndomorphism.of(lift)
    columns: List[Vector] = []
    for g in range(1, a.n + 1):
        image: MagnusTruncation = truncated.iterate(
            a.m, MagnusTruncation.letter(g, a.n)
        )
        columns.append(
            truncated_class(image * MagnusTruncation.letter(-g, a.n))
        )
    log.debug("Lift iterated [Label=%s, Order=%s]", a.label, a.m)
    delta: IntegerMatrix = IntegerMatrix.from_columns(
        columns, len(wedge_basis(a.n, 2))
    )
    alpha1: IntegerMatrix = delta.scale(sign)
    if exterior_matrix(a.action, 2) @ alpha1 != alpha1 @ a.action:
        raise InvariantViolationError("alpha equivariance", a.label)
    return AlphaData(a.n, delta, alpha1, sign)


def _check_lift_length(lift: FreeEndomorphism, cap: int) -> None:
    longest: int = max((len(image) for image in lift.images), default=0)
    if longest > cap:
        log.warning(
            "Word length cap exceeded [Length=%s, Cap=%s]", longest, cap
        )
        raise ResourceLimitError("free word length", longest, cap)


def delta_from_words(
    a: CyclicAction,
    word_cap: int = DEFAULT_WORD_CAP,
    descending: bool = False,
) -> IntegerMatrix:
    """δ by iterating the lift on literal free words.

    Word lengths grow geometrically with m, so this only suits small
    actions; it cross-checks the truncated computation.
    """
    lift: FreeEndomorphism = canonical_lift(a, descending)
    columns: List[Vector] = []
    for g in range(1, a.n + 1):
        image: FreeWord = endo_iterate_apply(
            lift, a.m, FreeWord((g,)), word_cap
        )
        log.debug(
            "Lift iterated on words [Label=%s, Generator=%s, Length=%s]",
            a.label,
            g,
            len(image),
        )
        columns.append(lcs_class(word_multiply(image, FreeWord((-g,))), a.n))
    return IntegerMatrix.from_columns(columns, len(wedge_basis(a.n, 2)))


def _flatten_column_major(matrix: IntegerMatrix) -> Vector:
    return tuple(x for col in matrix.columns() for x in col)


def _wedge_square(a: CyclicAction) -> CyclicAction:
    # Λ²L vanishes below rank 2
    if a.n < 2:
        return trivial_lattice(a.m, 0)
    return exterior_power(a, 2)


def obstruction_nonzero(
    a: CyclicAction, data: Optional[AlphaData] = None
) -> bool:
    """True iff α₁^∧ is not a norm in hom(L, Λ²L)."""
    if a.n < 2:
        log.debug("Obstruction vanishes below rank 2 [Label=%s]", a.label)
        return False
    data = data or compute_alpha(a)
    hom: CyclicAction = hom_lattice(a, _wedge_square(a))
    element: Vector = _flatten_column_major(data.alpha1_wedge)
    if hom.action.apply(element) != element:
        raise InvariantViolationError("alpha invariance", a.label)
    preimage: Optional[Vector] = solve_integral(operators(hom).norm, element)
    log.debug(
        "Obstruction decided [Label=%s, Nonzero=%s]",
        a.label,
        preimage is None,
    )
    return preimage is None


def witness_lattice(a: CyclicAction) -> CyclicAction:
    """Λ²L^∧ ⊗ L; coordinate I·n + i holds the coefficient of e^∧_I ⊗ e_i."""
    return tensor(dual(_wedge_square(a)), a)


def paper_witness() -> Vector:
    """Invariant witness for the rank-3 order-4 example."""
    return (1, 1, 2, 0, 0, -1, 0, 1, 1)


def pairing_value(
    a: CyclicAction,
    witness: Sequence[int],
    data: Optional[AlphaData] = None,
) -> int:
    """⟨α₁, witness⟩ mod m for a G-invariant witness."""
    data = data or compute_alpha(a)
    lattice: CyclicAction = witness_lattice(a)
    if len(witness) != lattice.n:
        raise UsageError(
            f"Witness length mismatch [Expected={lattice.n}, {len(witness)}]"
        )
    if lattice.action.apply(witness) != tuple(witness):
        raise ContractViolationError("pairing_value", "witness not invariant")
    total: int = sum(
        witness[row * a.n + col] * data.alpha1_wedge[row, col]
        for row in range(data.alpha1_wedge.rows)
        for col in range(a.n)
    )
    return total % a.m


def invariant_witnesses(a: CyclicAction) -> IntegerMatrix:
    lattice: CyclicAction = witness_lattice(a)
    return kernel_basis(
        lattice.action - IntegerMatrix.identity(lattice.n)
    )


def pairing_values(
    a: CyclicAction, data: Optional[AlphaData] = None
) -> List[int]:
    data = data or compute_alpha(a)
    return [
        pairing_value(a, col, data) for col in invariant_witnesses(a).columns()
    ]
