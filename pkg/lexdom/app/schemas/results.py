from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class Assumption(BaseModel):
    """A premise checked by the oracle before a formula is applied"""

    name: str
    holds: bool
    detail: Optional[str] = None


class BoundSide(str, Enum):
    LOWER = "lower"
    UPPER = "upper"
    EQUAL = "equal"


class BoundTerm(BaseModel):
    side: BoundSide
    value: int
    source: str
    premise: str


class FormulaResult(BaseModel):
    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None
    source: str
    assumptions: List[Assumption] = Field(default_factory=list)
    provenance: List[BoundTerm] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_shape(self) -> "FormulaResult":
        if self.value is None:
            if self.lower is None or self.upper is None:
                raise ValueError("a formula result needs a value or a lower..upper interval")
            if self.lower > self.upper:
                raise ValueError(f"empty interval [{self.lower}, {self.upper}] from {self.source}")
        elif self.value < 0:
            raise ValueError("formula values are nonnegative")
        return self

    def contains(self, x: int) -> bool:
        if self.value is not None:
            return x == self.value
        return self.lower <= x <= self.upper


class SmallValue(str, Enum):
    TWO = "2"
    THREE = "3"
    AT_LEAST_FOUR = ">=4"


class SmallValueClassification(BaseModel):
    value: SmallValue
    condition: Optional[str] = None
    matches: List[str] = Field(default_factory=list)


class EquivalenceFlags(BaseModel):
    """Both sides of the 2γt(G) characterisation, each evaluated by the oracle"""

    a: bool
    b: bool
    gx2_product: int
    gt_g: int
    gamma_g: int
    gtr_product: int
    gamma_h: int


class HRegime(BaseModel):
    """Oracle facts about a second factor H"""

    n: int
    gamma: int
    gamma_x2: Optional[int] = None
    universal_count: int


class InvariantResponse(BaseModel):
    graph: str
    kind: str
    value: int
    witness: Optional[List[int]] = None
    function: Optional[Dict[int, int]] = None
    count: Optional[int] = None


class ProductResponse(BaseModel):
    graph6: str
    order: int
    pair_index: Dict[str, int]
    rule: str = "(u, v) -> u * nH + v"


class ConstructionResponse(BaseModel):
    scheme: str
    witness: List[Tuple[int, int]]
    labels: List[int]
    cardinality: int
    expected: int
    valid: bool
    profile: Optional[List[int]] = None
    function: Optional[Dict[int, int]] = None


class HuntHit(BaseModel):
    graph6: str
    n: int
    value: int
    factorization: Optional[str] = None
