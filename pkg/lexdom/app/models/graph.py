from enum import Enum
from typing import FrozenSet, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from app.utils.bitset import bit, iter_bits, popcount
from app.utils.validators import GraphValidationError

GRAPH_CAP = 64

VertexSet = FrozenSet[int]


class Graph(BaseModel):
    """Immutable simple undirected graph on vertices 0..n-1.

    ``adj[v]`` is the open neighbourhood of v as a bitmask.
    """

    n: int
    adj: Tuple[int, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_structure(self) -> "Graph":
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.n > GRAPH_CAP:
            raise ValueError(f"graph order {self.n} exceeds {GRAPH_CAP} vertices")
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        limit = 1 << self.n
        for v, row in enumerate(self.adj):
            if row < 0 or row >= limit:
                raise ValueError(f"adjacency row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
        return self

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def closed(self, v: int) -> int:
        return self.adj[v] | bit(v)

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    @property
    def size(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


class FamilyKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    COMPLETE = "complete"
    STAR = "star"
    DOUBLE_STAR = "double_star"
    COMPLETE_BIPARTITE = "complete_bipartite"
    EMPTY = "empty"
    FAMILY_HK = "family_Hk"


FAMILY_ALIASES = {
    "path": FamilyKind.PATH,
    "cycle": FamilyKind.CYCLE,
    "complete": FamilyKind.COMPLETE,
    "star": FamilyKind.STAR,
    "dstar": FamilyKind.DOUBLE_STAR,
    "double_star": FamilyKind.DOUBLE_STAR,
    "cbip": FamilyKind.COMPLETE_BIPARTITE,
    "complete_bipartite": FamilyKind.COMPLETE_BIPARTITE,
    "empty": FamilyKind.EMPTY,
    "hk": FamilyKind.FAMILY_HK,
    "family_hk": FamilyKind.FAMILY_HK,
}

SHORT_NAMES = {
    FamilyKind.DOUBLE_STAR: "dstar",
    FamilyKind.COMPLETE_BIPARTITE: "cbip",
    FamilyKind.FAMILY_HK: "hk",
}


class FamilySpec(BaseModel):
    """A named graph family member.

    params by kind: path/cycle/complete/empty (n,), star (r,) leaves,
    double_star and complete_bipartite (n1, n2), family_Hk (k,) with sizes s_1..s_k.
    """

    kind: FamilyKind
    params: Tuple[int, ...]
    sizes: Tuple[int, ...] = ()

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def normalize_star(cls, data):
        # star:1,r names K_{1,r}; stored as (r,)
        if isinstance(data, dict) and FAMILY_ALIASES.get(str(getattr(data.get("kind"), "value", data.get("kind")))) == FamilyKind.STAR:
            params = tuple(data.get("params", ()))
            if len(params) == 2:
                if params[0] != 1:
                    raise ValueError("star is written star:r or star:1,r")
                data = {**data, "params": (params[1],)}
        return data

    @field_validator("params")
    @classmethod
    def check_params_positive(cls, v):
        if any(p < 0 for p in v):
            raise ValueError("family parameters must be nonnegative")
        return v

    @model_validator(mode="after")
    def check_kind_params(self) -> "FamilySpec":
        kind, params = self.kind, self.params
        expected = 2 if kind in (FamilyKind.DOUBLE_STAR, FamilyKind.COMPLETE_BIPARTITE) else 1
        if len(params) != expected:
            raise ValueError(f"{kind.value} takes {expected} parameter(s), got {len(params)}")
        if kind == FamilyKind.PATH and params[0] < 1:
            raise ValueError("path needs n >= 1")
        if kind == FamilyKind.CYCLE and params[0] < 3:
            raise ValueError("cycle needs n >= 3")
        if kind in (FamilyKind.COMPLETE, FamilyKind.EMPTY, FamilyKind.STAR) and params[0] < 1:
            raise ValueError(f"{kind.value} needs a positive parameter")
        if kind in (FamilyKind.DOUBLE_STAR, FamilyKind.COMPLETE_BIPARTITE) and min(params) < 1:
            raise ValueError(f"{kind.value} needs n1, n2 >= 1")
        if kind == FamilyKind.FAMILY_HK:
            k = params[0]
            if k < 3:
                raise ValueError("family_Hk needs k >= 3")
            if len(self.sizes) != k or any(s < 1 for s in self.sizes):
                raise ValueError("family_Hk needs k block sizes, all >= 1")
        elif self.sizes:
            raise ValueError(f"{kind.value} takes no block sizes")
        if self.order > GRAPH_CAP:
            raise ValueError(f"{self.label} has order {self.order} > {GRAPH_CAP}")
        return self

    @property
    def order(self) -> int:
        p = self.params
        if self.kind == FamilyKind.STAR:
            return p[0] + 1
        if self.kind == FamilyKind.DOUBLE_STAR:
            return p[0] + p[1] + 2
        if self.kind == FamilyKind.COMPLETE_BIPARTITE:
            return p[0] + p[1]
        if self.kind == FamilyKind.FAMILY_HK:
            return p[0] + sum(self.sizes)
        return p[0]

    @property
    def label(self) -> str:
        name = SHORT_NAMES.get(self.kind, self.kind.value)
        text = f"{name}:{','.join(str(p) for p in self.params)}"
        if self.sizes:
            text += ":" + ",".join(str(s) for s in self.sizes)
        return text

    @classmethod
    def create(cls, kind: FamilyKind, params: Tuple[int, ...], sizes: Tuple[int, ...] = ()) -> "FamilySpec":
        try:
            return cls(kind=kind, params=tuple(params), sizes=tuple(sizes))
        except ValidationError as e:
            raise GraphValidationError(_first_message(e)) from None

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``path:7``, ``dstar:2,3``, ``hk:4:3,2,3,2`` (optionally prefixed by ``family:``)"""
        raw = text.strip()
        if raw.startswith("family:"):
            raw = raw[len("family:"):]
        parts = raw.split(":")
        kind = FAMILY_ALIASES.get(parts[0].lower())
        if kind is None:
            raise GraphValidationError(f"unknown family {parts[0]!r}")
        if len(parts) > 3:
            raise GraphValidationError(f"too many fields in family spec {text!r}")
        try:
            params = tuple(int(p) for p in parts[1].split(",")) if len(parts) > 1 and parts[1] else ()
            sizes = tuple(int(s) for s in parts[2].split(",")) if len(parts) > 2 and parts[2] else ()
        except ValueError:
            raise GraphValidationError(f"non-integer parameter in family spec {text!r}") from None
        return cls.create(kind, params, sizes)


def _first_message(error: ValidationError) -> str:
    errors = error.errors()
    if not errors:
        return str(error)
    return str(errors[0].get("msg", error)).removeprefix("Value error, ")


def make_graph(n: int, adj: Tuple[int, ...]) -> Graph:
    """Construct a Graph, reporting structural problems as GraphValidationError"""
    try:
        return Graph(n=n, adj=tuple(adj))
    except ValidationError as e:
        raise GraphValidationError(_first_message(e)) from None
