from enum import Enum
from typing import List, Optional

from pydantic import BaseModel


class EquivalenceVerdict(str, Enum):
    CONSISTENT = "consistent-up-to-degree"
    MISMATCH = "mismatch"
    INCONCLUSIVE = "inconclusive"


class DegreeComparison(BaseModel):
    degree: int  # degree on the second presentation
    left: int  # dimension of the first presentation at ratio * degree
    right: int
    matches: bool


class RelationCheck(BaseModel):
    relation: str
    image: str
    verdict: str  # MembershipVerdict value


class EquivalenceReport(BaseModel):
    degree_bound: int
    ratio: int = 1
    dims: List[DegreeComparison] = []
    relations: List[RelationCheck] = []
    verdict: EquivalenceVerdict
    mismatch_degree: Optional[int] = None
    exact: bool = True


class SchemaInstanceCheck(BaseModel):
    parameter: int
    instance: str
    truncation: int
    verdict: str


class IndependenceReport(BaseModel):
    schema_text: str
    instances: List[SchemaInstanceCheck] = []
    verdict: EquivalenceVerdict
