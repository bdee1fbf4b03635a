import logging
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from app.core.config import settings
from app.models.graph import FamilyKind, FamilySpec, Graph, VertexSet
from app.models.invariants import InvariantKind, WeightFn
from app.services.formula_service import FormulaService, gamma_x2_path_cycle_gamma2
from app.services.graph_service import graph_service
from app.services.product_service import PairIndex, product_service
from app.services.solver_service import SolverService, solver_service
from app.utils.bitset import bit, popcount
from app.utils.validators import GraphValidationError, LexdomError, PremiseError, validate_vertex

logger = logging.getLogger(__name__)

K = InvariantKind


class SchemeAction(str, Enum):
    DOTS2_DOM = "dots2_dom"
    DOT1 = "dot1"
    NONE = "none"


ACTION_COUNTS = {SchemeAction.NONE: 0, SchemeAction.DOT1: 1, SchemeAction.DOTS2_DOM: 2}

# copies of H in P_n∘H, left to right: 2 = dominating pair, 1 = single vertex
BASE_ROWS = {
    2: (2, 1),
    3: (0, 2, 1),
    4: (0, 2, 2, 0),
    5: (0, 2, 1, 2, 0),
    6: (0, 2, 1, 1, 2, 0),
    7: (0, 2, 1, 0, 1, 2, 0),
    8: (0, 2, 1, 0, 1, 2, 2, 0),
}

SMALL_VALUE_CASES = ("i", "ii", "iii", "iv", "v", "vi")


class SchemeRow(BaseModel):
    """Per-copy actions of the path scheme for γ(H) = 2"""

    actions: Tuple[SchemeAction, ...]

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "SchemeRow":
        lookup = {count: action for action, count in ACTION_COUNTS.items()}
        return cls(actions=tuple(lookup[c] for c in counts))

    @classmethod
    def for_path(cls, n: int) -> "SchemeRow":
        """Concatenate P7 blocks with a tail block; a remainder of 1 folds the last P7 into a P8"""
        if n < 2:
            raise PremiseError(f"path scheme needs n >= 2, got {n}")
        if n <= 8:
            return cls.from_counts(BASE_ROWS[n])
        q, r = divmod(n, 7)
        counts: Tuple[int, ...] = ()
        if r == 1:
            counts = BASE_ROWS[7] * (q - 1) + BASE_ROWS[8]
        else:
            counts = BASE_ROWS[7] * q + (BASE_ROWS[r] if r else ())
        return cls.from_counts(counts)

    @property
    def counts(self) -> Tuple[int, ...]:
        return tuple(ACTION_COUNTS[a] for a in self.actions)

    @property
    def cardinality(self) -> int:
        return sum(self.counts)


def lex_double_dominates(g: Graph, h: Graph, s: VertexSet, idx: PairIndex) -> bool:
    """Double domination in G∘H checked on the factors, without building the product"""
    per_copy = [0] * g.n
    for x in s:
        u, v = idx.decode(x)
        per_copy[u] |= bit(v)
    for u in range(g.n):
        outside = sum(popcount(per_copy[x]) for x in range(g.n) if g.adj[u] >> x & 1)
        for v in range(h.n):
            if outside + popcount(h.closed(v) & per_copy[u]) < 2:
                return False
    return True


class ConstructionService:
    def __init__(self, solver: Optional[SolverService] = None, formulas: Optional[FormulaService] = None):
        self.solver = solver or solver_service
        self.formulas = formulas or FormulaService(solver=self.solver)

    def _check_double(self, g: Graph, h: Graph, s: VertexSet, idx: PairIndex, what: str) -> VertexSet:
        if g.n * h.n <= settings.GRAPH_CAP:
            product_graph, _ = product_service.lex_product(g, h)
            valid = self.solver.validate(product_graph, K.DOUBLE, s)
        else:
            valid = lex_double_dominates(g, h, s, idx)
        if not valid:
            raise LexdomError(f"{what}: constructed set is not double dominating")
        return s

    def default_dom_pair(self, h: Graph) -> Tuple[int, int]:
        """Lexicographically smallest dominating 2-set of H"""
        for pair in combinations(range(h.n), 2):
            if self.solver.validate(h, K.DOM, frozenset(pair)):
                return pair
        raise PremiseError("H has no dominating set of size 2")

    def path_scheme_gamma2(
        self, n: int, h: Graph, dom_pair: Optional[Sequence[int]] = None, single: Optional[int] = None
    ) -> VertexSet:
        row = SchemeRow.for_path(n)
        if dom_pair is None:
            dom_pair = self.default_dom_pair(h)
        pair = tuple(sorted(set(dom_pair)))
        if len(pair) != 2:
            raise PremiseError(f"dom_pair must hold two distinct vertices, got {tuple(dom_pair)}")
        for v in pair:
            validate_vertex(h, v, "dom_pair vertex")
        if not self.solver.validate(h, K.DOM, frozenset(pair)):
            raise PremiseError(f"{pair} does not dominate H")
        single = pair[0] if single is None else validate_vertex(h, single, "single")

        g = graph_service.family(FamilySpec.create(FamilyKind.PATH, (n,)))
        idx = PairIndex(nG=n, nH=h.n)
        chosen = []
        for u, action in enumerate(row.actions):
            if action == SchemeAction.DOTS2_DOM:
                chosen += [(u, pair[0]), (u, pair[1])]
            elif action == SchemeAction.DOT1:
                chosen.append((u, single))
        s = product_service.pairs_to_set(chosen, idx)
        expected = gamma_x2_path_cycle_gamma2(n)
        if len(s) != expected:
            raise LexdomError(f"path scheme for n={n} has {len(s)} vertices, expected {expected}")
        logger.debug(f"path scheme n={n}: {row.counts}")
        return self._check_double(g, h, s, idx, f"path scheme n={n}")

    def small_value_witness(self, g: Graph, h: Graph, case: str) -> VertexSet:
        case = case.strip().lower()
        if case not in SMALL_VALUE_CASES:
            raise GraphValidationError(f"unknown case {case!r}; expected one of {', '.join(SMALL_VALUE_CASES)}")
        classification = self.formulas.classify_small_value(g, h)
        if f"three.{case}" not in classification.matches:
            raise PremiseError(f"case ({case}) premises do not hold; matched {classification.matches or 'none'}")
        idx = PairIndex(nG=g.n, nH=h.n)
        ug = sorted(graph_service.universal_vertices(g))
        uh = sorted(graph_service.universal_vertices(h))

        if case in ("i", "iii"):
            u = 0 if case == "i" else ug[0]
            w = 1 if case == "i" else min(x for x in range(g.n) if x != u)
            if self.formulas.h_regime(h).gamma == 2:
                v1, v2 = sorted(self.solver.min_witness(h, K.DOM))
            else:
                v1 = uh[0]
                v2 = min(y for y in range(h.n) if y != v1)
            s = product_service.pairs_to_set([(u, v1), (u, v2), (w, v1)], idx)
        elif case == "ii":
            u, w = ug[0], ug[1]
            z = min(x for x in range(g.n) if x not in (u, w))
            s = product_service.pairs_to_set([(u, 0), (w, 0), (z, 0)], idx)
        elif case in ("iv", "v"):
            s = product_service.lift(self.solver.min_witness(g, K.DOUBLE_TOTAL), 0, idx)
        else:
            s = product_service.lift(self.solver.min_witness(g, K.DOUBLE), uh[0], idx)

        if len(s) != 3:
            raise LexdomError(f"case ({case}) witness has {len(s)} vertices, expected 3")
        return self._check_double(g, h, s, idx, f"case ({case})")

    def two_universal_witness(self, g: Graph, h: Graph) -> VertexSet:
        uh = sorted(graph_service.universal_vertices(h))
        if len(uh) < 2:
            raise PremiseError("H needs at least two universal vertices")
        idx = PairIndex(nG=g.n, nH=h.n)
        d = self.solver.min_witness(g, K.DOM)
        s = product_service.lift(d, uh[0], idx) | product_service.lift(d, uh[1], idx)
        return self._check_double(g, h, s, idx, "two-universal lift")

    def universal_lift_witness(self, g: Graph, h: Graph) -> WeightFn:
        uh = sorted(graph_service.universal_vertices(h))
        if not uh:
            raise PremiseError("H needs a universal vertex")
        if g.n == 0 or graph_service.has_isolated_vertex(g):
            raise PremiseError("G must have no isolated vertex")
        f = self.solver.min_witness(g, K.TOTAL_ROMAN_2)
        product_graph, idx = product_service.lex_product(g, h)
        lifted = WeightFn.from_mapping(
            product_graph.n, {idx.encode(u, uh[0]): value for u, value in f.nonzero().items()}
        )
        if not self.solver.validate(product_graph, K.TOTAL_ROMAN_2, lifted):
            raise LexdomError("lifted function is not a total Roman {2}-dominating function")
        return lifted

    def hk_witness(self, k: int, sizes: Sequence[int]) -> VertexSet:
        spec = FamilySpec.create(FamilyKind.FAMILY_HK, (k,), tuple(sizes))
        g = graph_service.family(spec)
        s = frozenset(range(k))
        if not self.solver.validate(g, K.DOUBLE_TOTAL, s):
            raise LexdomError(f"cycle vertices of {spec.label} are not double total dominating")
        return s


construction_service = ConstructionService()
