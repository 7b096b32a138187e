from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from movoid.models.enums import SpaceKind, Theorem
from movoid.models.exact import Exact


class RadicalBound(BaseModel):
    """The real bound (A + sqrt(R)) / D of one theorem, with its integer threshold."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    theorem: Theorem
    A: Optional[Exact] = None
    R: Optional[Exact] = None
    D: Optional[Exact] = None
    threshold: Optional[int] = None
    applicable: bool = True
    reason: Optional[str] = None
    rigorous: bool = True


class BestBound(BaseModel):
    threshold: int
    theorem: Theorem


class BoundReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    space: SpaceKind
    r: int
    q: int
    e: Exact
    bounds: List[RadicalBound] = []
    best: BestBound
    excludes_one_ovoids: bool = False
    notes: List[str] = Field([], description="Remarks attached to this parameter set")
