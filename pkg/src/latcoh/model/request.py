from __future__ import annotations

from typing import List, Optional

from pydantic import Field, model_validator

from .common import BaseModel


class LatticeSpecFile(BaseModel):
    m: Optional[int] = Field(default=None, ge=1)
    """Order of the acting cyclic group."""
    matrix: Optional[List[List[int]]] = None
    """Action of the generator, columns are images of basis vectors."""
    builtin: Optional[str] = None
    """Name of a built-in lattice, e.g. ``cyclotomic:5:1``."""
    label: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one_source(self) -> LatticeSpecFile:
        if (self.matrix is None) == (self.builtin is None):
            raise ValueError("Exactly one of matrix or builtin is required")
        if self.matrix is not None and self.m is None:
            raise ValueError("m is required with an explicit matrix")
        return self


class SuiteRequest(BaseModel):
    flip_sign: bool = False
    """Run with the opposite convention sign for α₁."""
    corrupt: Optional[str] = None
    """Name of a built-in replaced by a deliberately wrong action."""
    quick: bool = False
    """Use reduced random sample counts."""
    seed: int = 20240601
