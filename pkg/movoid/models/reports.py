from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from movoid.models.enums import IdentityId
from movoid.models.exact import Exact


class OvoidCertificate(BaseModel):
    """Outcome of validating a (weighted) m-ovoid."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    space: str
    m: int
    valid: bool
    weighted: bool = False
    size: int = Field(..., description="Total weight |O|")
    expected_size: Optional[int] = None
    generator_min: Optional[int] = None
    generator_max: Optional[int] = None
    offending_generator: Optional[List[List[int]]] = Field(
        None, description="RREF basis of the first generator with the wrong weight"
    )
    offending_point: Optional[int] = Field(None, description="Ambient index of the first failing point")
    message: Optional[str] = None


class PerpProfileReport(BaseModel):
    """Observed |p^perp ∩ O| values against the two-branch formula."""

    space: str
    m: int
    inside_expected: int
    outside_expected: int
    inside_observed: List[int] = []
    outside_observed: List[int] = []
    checked_points: int = 0
    violations: List[int] = Field([], description="Ambient indices where the count is wrong")
    holds: bool = True


class IdentityReport(BaseModel):
    """Exact evaluation of one identity or inequality at one input."""
    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    identity: IdentityId = Field(..., alias="id")
    inputs: Dict[str, Any] = {}
    lhs: Optional[Exact] = None
    rhs: Optional[Exact] = None
    residual: Optional[Exact] = None
    passed: bool = Field(False, alias="pass")
    hypothesis_ok: bool = True
    skipped: Optional[str] = None
    notes: List[str] = []
