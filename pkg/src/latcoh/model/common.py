from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict, Field, field_validator
from sympy import factorint

CFG = ConfigDict(frozen=True, populate_by_name=True)


class BaseModel(PydanticBaseModel):
    model_config = CFG


class Error(BaseModel):
    status: int
    code: str
    message: str


class AbelianGroupStructure(BaseModel):
    """Finitely generated abelian group ℤ^free_rank ⊕ ⊕ ℤ/torsion[i]."""

    free_rank: int = Field(default=0, ge=0)
    torsion: Tuple[int, ...] = ()

    @field_validator("torsion")
    @classmethod
    def _check_chain(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        for prev, factor in zip((1,) + value, value):
            if factor <= 1 or factor % prev != 0:
                raise ValueError(
                    f"Torsion is not an invariant factor chain [{value}]"
                )
        return value

    @classmethod
    def from_factors(cls, factors: Iterable[int]) -> AbelianGroupStructure:
        """Builds the structure of ⊕ ℤ/f for a list of diagonal entries.

        Entries equal to 1 are dropped and zeros count as free summands.
        The factors need not form a divisibility chain.
        """
        free: int = 0
        powers: Dict[int, List[int]] = {}
        for factor in factors:
            factor = abs(factor)
            if factor == 0:
                free += 1
                continue
            for prime, exp in factorint(factor).items():
                powers.setdefault(prime, []).append(prime**exp)
        length: int = max((len(v) for v in powers.values()), default=0)
        torsion: List[int] = [1] * length
        for values in powers.values():
            values.sort()
            for pos, power in enumerate(values):
                torsion[length - len(values) + pos] *= power
        return cls.model_construct(free_rank=free, torsion=tuple(torsion))

    @classmethod
    def trivial(cls) -> AbelianGroupStructure:
        return cls.model_construct(free_rank=0, torsion=())

    @property
    def size(self) -> int:
        """Number of structure coordinates (generators)."""
        return self.free_rank + len(self.torsion)

    @property
    def factors(self) -> Tuple[int, ...]:
        """Modulus per structure coordinate, 0 for free coordinates."""
        return self.torsion + (0,) * self.free_rank

    def order(self) -> Optional[int]:
        if not self.is_finite():
            return None
        order: int = 1
        for factor in self.torsion:
            order *= factor
        return order

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(
        self, other: AbelianGroupStructure
    ) -> AbelianGroupStructure:
        return AbelianGroupStructure.from_factors(
            self.factors + other.factors
        )

    def __str__(self) -> str:
        parts: List[str] = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


class TableCell(BaseModel):
    i: int
    j: int
    free_rank: int
    torsion: Tuple[int, ...]

    @classmethod
    def of(
        cls, i: int, j: int, structure: AbelianGroupStructure
    ) -> TableCell:
        return cls(
            i=i,
            j=j,
            free_rank=structure.free_rank,
            torsion=structure.torsion,
        )


class DifferentialMatrix(BaseModel):
    r: int
    s: int
    source: Tuple[int, int]
    target: Tuple[int, int]
    matrix: List[List[int]]


class Witness(BaseModel):
    r: int
    s: int
    column: int
