from enum import Enum
from typing import Dict, FrozenSet, Tuple

from pydantic import BaseModel, ConfigDict, field_validator


class InvariantKind(str, Enum):
    """Domination-type invariants computed by the solver"""

    DOM = "g"
    TOTAL = "gt"
    DOUBLE = "gx2"
    DOUBLE_TOTAL = "g2t"
    TWO_PACKING = "rho"
    TOTAL_ROMAN = "gtr"
    TOTAL_ROMAN_2 = "gtr2"

    @property
    def is_function(self) -> bool:
        return self in (InvariantKind.TOTAL_ROMAN, InvariantKind.TOTAL_ROMAN_2)

    @property
    def symbol(self) -> str:
        return INVARIANT_SYMBOLS[self]


INVARIANT_SYMBOLS: Dict[InvariantKind, str] = {
    InvariantKind.DOM: "γ",
    InvariantKind.TOTAL: "γt",
    InvariantKind.DOUBLE: "γ×2",
    InvariantKind.DOUBLE_TOTAL: "γ2,t",
    InvariantKind.TWO_PACKING: "ρ",
    InvariantKind.TOTAL_ROMAN: "γtR",
    InvariantKind.TOTAL_ROMAN_2: "γt{R2}",
}


class WeightFn(BaseModel):
    """Function V -> {0,1,2} stored as one value per vertex label"""

    values: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @field_validator("values")
    @classmethod
    def check_values(cls, v):
        if any(x not in (0, 1, 2) for x in v):
            raise ValueError("weight function values must be 0, 1 or 2")
        return v

    @classmethod
    def from_mapping(cls, n: int, mapping: Dict[int, int]) -> "WeightFn":
        values = [0] * n
        for v, value in mapping.items():
            values[v] = value
        return cls(values=tuple(values))

    def level(self, value: int) -> FrozenSet[int]:
        return frozenset(v for v, x in enumerate(self.values) if x == value)

    @property
    def v0(self) -> FrozenSet[int]:
        return self.level(0)

    @property
    def v1(self) -> FrozenSet[int]:
        return self.level(1)

    @property
    def v2(self) -> FrozenSet[int]:
        return self.level(2)

    @property
    def weight(self) -> int:
        return sum(self.values)

    def positive_mask(self) -> int:
        mask = 0
        for v, x in enumerate(self.values):
            if x:
                mask |= 1 << v
        return mask

    def nonzero(self) -> Dict[int, int]:
        return {v: x for v, x in enumerate(self.values) if x}
