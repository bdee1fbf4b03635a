import logging
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple

from app.core.config import settings
from app.models.graph import FamilyKind, FamilySpec, Graph, VertexSet, make_graph
from app.utils.bitset import bit, iter_bits, popcount
from app.utils.validators import CapExceededError, GraphValidationError, validate_vertex

logger = logging.getLogger(__name__)

GraphPredicate = Callable[[Graph], bool]


class GraphService:
    def build_graph(self, n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
        """Build a simple graph; duplicate pairs collapse"""
        if n < 0:
            raise GraphValidationError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphValidationError(f"loop edge at vertex {u}")
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        return make_graph(n, tuple(adj))

    def family(self, spec: FamilySpec) -> Graph:
        p = spec.params
        kind = spec.kind
        if kind == FamilyKind.PATH:
            return self.build_graph(p[0], [(i, i + 1) for i in range(p[0] - 1)])
        if kind == FamilyKind.CYCLE:
            return self.build_graph(p[0], [(i, (i + 1) % p[0]) for i in range(p[0])])
        if kind == FamilyKind.COMPLETE:
            return self.build_graph(p[0], combinations(range(p[0]), 2))
        if kind == FamilyKind.EMPTY:
            return self.build_graph(p[0], [])
        if kind == FamilyKind.STAR:
            # center 0, leaves 1..r
            return self.build_graph(p[0] + 1, [(0, leaf) for leaf in range(1, p[0] + 1)])
        if kind == FamilyKind.DOUBLE_STAR:
            # centers 0 and 1; leaves of 0 first, then leaves of 1
            n1, n2 = p
            edges = [(0, 1)]
            edges += [(0, 2 + i) for i in range(n1)]
            edges += [(1, 2 + n1 + i) for i in range(n2)]
            return self.build_graph(n1 + n2 + 2, edges)
        if kind == FamilyKind.COMPLETE_BIPARTITE:
            n1, n2 = p
            return self.build_graph(n1 + n2, [(a, n1 + b) for a in range(n1) for b in range(n2)])
        if kind == FamilyKind.FAMILY_HK:
            return self._family_hk(p[0], spec.sizes)
        raise GraphValidationError(f"unsupported family {kind}")

    def _family_hk(self, k: int, sizes: Sequence[int]) -> Graph:
        edges = [(i, (i + 1) % k) for i in range(k)]
        label = k
        for i, s in enumerate(sizes):
            for _ in range(s):
                edges.append((label, i))
                edges.append((label, (i + 1) % k))
                label += 1
        return self.build_graph(label, edges)

    def rooted_product(self, g: Graph, h: Graph, root: int) -> Graph:
        """Copy i of H occupies labels i*|H|..; its root stands for vertex i of G"""
        if g.n == 0:
            raise GraphValidationError("rooted product needs a nonempty G")
        if h.n < 2:
            raise GraphValidationError("rooted product needs a nontrivial H")
        validate_vertex(h, root, "root")
        nh = h.n
        if g.n * nh > settings.GRAPH_CAP:
            raise CapExceededError(f"rooted product order {g.n * nh} exceeds cap {settings.GRAPH_CAP}")
        edges = []
        for i in range(g.n):
            base = i * nh
            edges += [(base + a, base + b) for a, b in h.edges()]
        edges += [(i * nh + root, j * nh + root) for i, j in g.edges()]
        return self.build_graph(g.n * nh, edges)

    def enumerate_labeled_graphs(
        self, n: int, predicate: Optional[GraphPredicate] = None, cap: Optional[int] = None
    ) -> Iterator[Graph]:
        """Yield every labeled graph on n vertices, in edge-mask order"""
        cap = settings.ENUMERATION_CAP if cap is None else cap
        if n < 1:
            raise GraphValidationError("enumeration needs n >= 1")
        if n > cap:
            raise CapExceededError(f"enumeration order {n} exceeds cap {cap}")
        pairs = list(combinations(range(n), 2))
        logger.debug(f"Enumerating {1 << len(pairs)} labeled graphs on {n} vertices")
        for code in range(1 << len(pairs)):
            adj = [0] * n
            for idx in iter_bits(code):
                u, v = pairs[idx]
                adj[u] |= bit(v)
                adj[v] |= bit(u)
            graph = make_graph(n, tuple(adj))
            if predicate is None or predicate(graph):
                yield graph

    def universal_vertices(self, g: Graph) -> VertexSet:
        full = g.all_mask
        return frozenset(v for v in range(g.n) if g.closed(v) == full)

    def has_isolated_vertex(self, g: Graph) -> bool:
        return any(row == 0 for row in g.adj)

    def min_degree(self, g: Graph) -> int:
        if g.n == 0:
            return 0
        return min(popcount(row) for row in g.adj)

    def is_connected(self, g: Graph) -> bool:
        if g.n == 0:
            return False
        seen = frontier = 1
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= g.adj[v]
            frontier = reach & ~seen
            seen |= frontier
        return seen == g.all_mask

    def is_tree(self, g: Graph) -> bool:
        return g.n >= 1 and g.size == g.n - 1 and self.is_connected(g)

    def remove_edge(self, g: Graph, u: int, v: int) -> Graph:
        if not g.has_edge(u, v):
            raise GraphValidationError(f"({u}, {v}) is not an edge")
        adj = list(g.adj)
        adj[u] &= ~bit(v)
        adj[v] &= ~bit(u)
        return make_graph(g.n, tuple(adj))

    def leaf(self, g: Graph) -> int:
        """Lowest-labeled vertex of degree 1"""
        leaves = [v for v in range(g.n) if popcount(g.adj[v]) == 1]
        if not leaves:
            raise GraphValidationError("graph has no leaf")
        return leaves[0]

    def is_k2_union(self, g: Graph, vertices: VertexSet) -> bool:
        """True iff the subgraph induced by ``vertices`` is a disjoint union of K2's"""
        mask = 0
        for v in vertices:
            mask |= bit(v)
        return all(popcount(g.adj[v] & mask) == 1 for v in vertices)


def no_isolated(g: Graph) -> bool:
    return g.n > 0 and all(row for row in g.adj)


def connected(g: Graph) -> bool:
    return graph_service.is_connected(g)


def nontrivial(g: Graph) -> bool:
    return g.n >= 2


PREDICATES: Dict[str, GraphPredicate] = {
    "no_isolated": no_isolated,
    "connected": connected,
    "nontrivial": nontrivial,
}


graph_service = GraphService()
