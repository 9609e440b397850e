from __future__ import annotations

from typing import List, Optional, Tuple, TypeVar

from .common import BaseModel, DifferentialMatrix, Error, TableCell, Witness
from .enum import CheckStatus, Command

R = TypeVar("R", bound="BaseReport")


class BaseReport(BaseModel):
    command: Command
    label: str
    digest: str
    """sha256 of the canonical input description."""
    status: int = 0
    """Process exit status implied by the report."""

    @property
    def verdict(self) -> bool:
        return True


class TateResp(BaseReport):
    free_outside_origin: bool
    cells: List[TableCell]
    violations: List[Tuple[int, int]]

    @property
    def verdict(self) -> bool:
        return not (self.free_outside_origin and self.violations)


class Alpha1Resp(BaseReport):
    delta: List[List[int]]
    alpha1: List[List[int]]
    sign: int
    obstruction_nonzero: bool
    pairing_values: List[int]
    witness_pairing: Optional[int] = None
    """Pairing with the supplied (or built-in) invariant witness."""


class D2Resp(BaseReport):
    maps: List[DifferentialMatrix]
    all_zero: bool
    witnesses: List[Witness]


class CollapseResp(BaseReport):
    collapses: bool
    obstruction_nonzero: bool
    witnesses: List[Witness]

    @property
    def verdict(self) -> bool:
        return self.collapses


class E2Resp(BaseReport):
    i_max: int
    cells: List[TableCell]
    checkerboard_violations: List[Tuple[int, int]]


class E3Resp(BaseReport):
    i_max: int
    cells: List[TableCell]
    changed: List[Tuple[int, int]]
    """Bidegrees where E₃ differs from E₂."""


class EulerResp(BaseReport):
    k: int
    lhs: str
    rhs: str
    equal: bool
    fixed_points: Optional[bool] = None
    """True when L^G ≠ 0 and the ratio is 1, None when L^G = 0."""

    @property
    def verdict(self) -> bool:
        return self.equal


class PrimeResp(BaseReport):
    p: int
    n: int
    s: int
    h1_order: int
    expected_h1: int
    ratio: str
    expected_ratio: int
    even_order: int
    odd_order: int
    prediction: str
    consistent: bool

    @property
    def verdict(self) -> bool:
        return self.consistent


class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    detail: str = ""


class VerifyResp(BaseReport):
    flip_sign: bool
    corrupt: Optional[str] = None
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status == CheckStatus.PASS for c in self.checks)

    @property
    def verdict(self) -> bool:
        return self.passed


class ErrorResp(BaseModel):
    command: Command
    status: int
    error: Error
