from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class CheckId(str, Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"
    V4 = "V4"
    V5 = "V5"
    V6 = "V6"
    V7 = "V7"
    V8 = "V8"
    V9 = "V9"
    V10 = "V10"
    V11 = "V11"
    V12 = "V12"
    V13 = "V13"
    V14 = "V14"
    V15 = "V15"
    V16 = "V16"

    @classmethod
    def parse(cls, text: str) -> "CheckId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValueError(f"unknown check id {text!r}") from None


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Counterexample(BaseModel):
    g: str
    h: Optional[str] = None
    observed: str
    expected: str
    detail: Optional[str] = None


class CheckReport(BaseModel):
    check: CheckId
    title: str
    tested: int = 0
    skipped: int = 0
    skip_reasons: Dict[str, int] = Field(default_factory=dict)
    verdict: Verdict = Verdict.PASS
    counterexamples: List[Counterexample] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    wall_time: float = 0.0

    @model_validator(mode="after")
    def check_verdict(self) -> "CheckReport":
        expected = Verdict.FAIL if self.counterexamples else Verdict.PASS
        if self.verdict != expected:
            raise ValueError(f"{self.check.value}: verdict {self.verdict.value} disagrees with counterexample list")
        return self

    @property
    def generated(self) -> int:
        return self.tested + self.skipped


class CorpusSource(str, Enum):
    DEFAULT = "default"
    ENUMERATE = "enumerate"
    GRAPH6_FILE = "graph6_file"
    FAMILY_GRID = "family_grid"
    EMPTY = "empty"


class CorpusSpec(BaseModel):
    """Which graphs and (G, H) pairs a check sweeps over"""

    source: CorpusSource = CorpusSource.DEFAULT
    g_n_max: int = 4
    h_n_max: int = 3
    single_n_max: int = 5
    predicate: str = "no_isolated"
    path: Optional[str] = None
    product_cap: int = 36
    include_grid: bool = True

    @model_validator(mode="after")
    def check_source(self) -> "CorpusSpec":
        if self.source == CorpusSource.GRAPH6_FILE and not self.path:
            raise ValueError("a graph6 corpus needs a file path")
        if self.product_cap > 64:
            raise ValueError("product cap cannot exceed 64")
        return self
