from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from app.core.config import get_settings
from app.features.equiv.schemas import EquivalenceReport, IndependenceReport


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class RunConfig(BaseModel):
    subcommand: str
    inputs: List[str]
    max_deg: int = Field(default_factory=lambda: get_settings().DEFAULT_MAX_DEG)
    simplify: bool = Field(default_factory=lambda: get_settings().SIMPLIFY_BY_DEFAULT)
    precedence: Optional[List[str]] = None
    output_format: OutputFormat = Field(default_factory=lambda: OutputFormat(get_settings().DEFAULT_FORMAT))
    output: Optional[str] = None

    element: Optional[str] = None
    expand_schemas: bool = False
    ratio: int = 1
    max_d: Optional[int] = None
    generator_map: Optional[str] = None
    override_witnesses: bool = False
    count: int = 5

    @field_validator("max_deg")
    @classmethod
    def max_deg_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_deg must be at least 1")
        return v

    @field_validator("ratio", "count")
    @classmethod
    def at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("max_d")
    @classmethod
    def non_negative(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError("max_d must be non-negative")
        return v


class ParseReport(BaseModel):
    canonical: str
    generators: int
    relations: int
    schemas: int


class GbReport(BaseModel):
    rules: List[str]
    degree_bound: int
    complete: bool
    exact: bool
    degenerate: bool
    confluence_failures: List[str] = []


class HilbertReport(BaseModel):
    dims: List[int]
    exact: bool
    degree_bound: int


class MemberReport(BaseModel):
    element: str
    normal_form: str
    degree_bound: int
    verdict: str


class PresentationReport(BaseModel):
    presentation: str
    generators: int
    relations: int
    eliminated: List[str] = []


class PeirceReport(BaseModel):
    presentation: str
    generators: int
    relations: int
    witness_verdict: str
    omega: List[str]
    unit_verdict: str
    degenerate: bool
    warnings: List[str] = []
    notes: List[str] = []


class MprimeReport(BaseModel):
    even: List[str]
    odd: List[str]
    mprime: List[str]
    bound: int


class EvidenceReport(BaseModel):
    schemas: List[IndependenceReport]
    verdict: str


__all__ = [
    "EquivalenceReport",
    "EvidenceReport",
    "GbReport",
    "HilbertReport",
    "MemberReport",
    "MprimeReport",
    "OutputFormat",
    "ParseReport",
    "PeirceReport",
    "PresentationReport",
    "RunConfig",
]
