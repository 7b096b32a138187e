from typing import List, Optional

from pydantic import BaseModel, Field

from movoid.models.enums import SearchStatus


class SearchOptions(BaseModel):
    """Knobs for the backtracking m-ovoid search."""
    max_solutions: int = Field(1, ge=0, description="Stop after this many solutions; 0 means all")
    symmetry: bool = Field(True, description="Fix one point of O at the root")
    budget: int = Field(10**9, gt=0, description="Maximum number of search nodes")
    seed: Optional[int] = Field(None, description="Deterministic permutation of the in/out value order")
    checkpoint_every: int = Field(10**6, gt=0)
    workers: int = Field(1, gt=0)


class SearchOutcome(BaseModel):
    status: SearchStatus
    space: str
    m: int
    solutions: List[List[int]] = Field([], description="Ambient point indices of each solution")
    nodes: int = 0
    seconds: float = 0.0
    certificate: Optional[str] = Field(None, description="Hash of the instance and options explored")
