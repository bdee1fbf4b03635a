import logging
from typing import FrozenSet, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict

from app.core.config import settings
from app.models.graph import Graph, VertexSet, make_graph
from app.utils.bitset import full_mask, iter_bits
from app.utils.validators import CapExceededError, GraphValidationError

logger = logging.getLogger(__name__)


class PairIndex(BaseModel):
    """Row-major labels for V(G) x V(H): (u, v) <-> u * nH + v"""

    nG: int
    nH: int

    model_config = ConfigDict(frozen=True)

    @property
    def order(self) -> int:
        return self.nG * self.nH

    def encode(self, u: int, v: int) -> int:
        if not (0 <= u < self.nG and 0 <= v < self.nH):
            raise GraphValidationError(f"pair ({u}, {v}) outside {self.nG} x {self.nH}")
        return u * self.nH + v

    def decode(self, x: int) -> Tuple[int, int]:
        if not 0 <= x < self.order:
            raise GraphValidationError(f"product vertex {x} outside 0..{self.order - 1}")
        return divmod(x, self.nH)

    def block(self, u: int) -> range:
        """Labels of the copy H_u"""
        return range(u * self.nH, (u + 1) * self.nH)

    def block_mask(self, u: int) -> int:
        return full_mask(self.nH) << (u * self.nH)


class ProjectionProfile(BaseModel):
    """Per-copy counts of a product vertex set and the induced A/B/C partition of V(G)"""

    counts: Tuple[int, ...]
    A: FrozenSet[int]
    B: FrozenSet[int]
    C: FrozenSet[int]

    model_config = ConfigDict(frozen=True)

    @property
    def total(self) -> int:
        return sum(self.counts)


class ProductService:
    """Lexicographic products and the bookkeeping between factor and product labels"""

    def lex_product(self, g: Graph, h: Graph) -> Tuple[Graph, PairIndex]:
        if g.n == 0 or h.n == 0:
            raise GraphValidationError("lexicographic product needs nonempty factors")
        order = g.n * h.n
        if order > settings.GRAPH_CAP:
            raise CapExceededError(f"product order {order} exceeds cap {settings.GRAPH_CAP}")
        idx = PairIndex(nG=g.n, nH=h.n)
        blocks = [idx.block_mask(u) for u in range(g.n)]
        adj = []
        for u in range(g.n):
            # every vertex of H_u sees all copies over N_G(u)
            across = 0
            for x in iter_bits(g.adj[u]):
                across |= blocks[x]
            shift = u * h.n
            for v in range(h.n):
                adj.append(across | (h.adj[v] << shift))
        logger.debug(f"Built lexicographic product of order {order}")
        return make_graph(order, tuple(adj)), idx

    def projection_profile(self, s: Iterable[int], idx: PairIndex) -> ProjectionProfile:
        counts = [0] * idx.nG
        for x in s:
            u, _ = idx.decode(x)
            counts[u] += 1
        return ProjectionProfile(
            counts=tuple(counts),
            A=frozenset(u for u, c in enumerate(counts) if c >= 2),
            B=frozenset(u for u, c in enumerate(counts) if c == 1),
            C=frozenset(u for u, c in enumerate(counts) if c == 0),
        )

    def lift(self, x: Iterable[int], v: int, idx: PairIndex) -> VertexSet:
        """X x {v} in product labels"""
        return frozenset(idx.encode(u, v) for u in x)

    def pairs_to_set(self, pairs: Iterable[Tuple[int, int]], idx: PairIndex) -> VertexSet:
        return frozenset(idx.encode(u, v) for u, v in pairs)

    def set_to_pairs(self, s: Iterable[int], idx: PairIndex) -> List[Tuple[int, int]]:
        return [idx.decode(x) for x in sorted(s)]


product_service = ProductService()
