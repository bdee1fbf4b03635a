import logging
from math import ceil
from typing import List, Optional

from app.core.config import settings
from app.models.graph import FamilyKind, FamilySpec, Graph
from app.models.invariants import InvariantKind
from app.schemas.results import (
    Assumption,
    BoundSide,
    BoundTerm,
    EquivalenceFlags,
    FormulaResult,
    HRegime,
    SmallValue,
    SmallValueClassification,
)
from app.services.graph_service import graph_service
from app.services.product_service import product_service
from app.services.solver_service import SolverService, solver_service
from app.utils.helpers import graph_key
from app.utils.invariant_cache import InvariantCache
from app.utils.validators import CapExceededError, LexdomError, PremiseError

logger = logging.getLogger(__name__)

INF = float("inf")

K = InvariantKind


def gamma_x2_path(n: int) -> int:
    if n < 2:
        raise PremiseError(f"γ×2(P_n) needs n >= 2, got {n}")
    value = 2 * ceil(n / 3)
    return value + 1 if n % 3 == 0 else value


def gamma_x2_cycle(n: int) -> int:
    if n < 3:
        raise PremiseError(f"γ×2(C_n) needs n >= 3, got {n}")
    return ceil(2 * n / 3)


def gamma_t_path_or_cycle(n: int) -> int:
    if n < 3:
        raise PremiseError(f"γt(P_n) = γt(C_n) needs n >= 3, got {n}")
    r = n % 4
    if r == 0:
        return n // 2
    if r == 2:
        return n // 2 + 1
    return (n + 1) // 2


def gamma_x2_path_cycle_gamma2(n: int) -> int:
    """γ×2(P_n∘H) = γ×2(C_n∘H) when γ(H) = 2"""
    value = n - n // 7
    return value + 1 if n % 7 in (1, 2) else value


class FormulaService:
    """Closed formulas and bounds for γ×2(G∘H); every premise is checked by the oracle"""

    def __init__(self, solver: Optional[SolverService] = None, cache: Optional[InvariantCache] = None):
        self.solver = solver or solver_service
        self.cache = cache or InvariantCache()

    def invariant(self, graph: Graph, kind: InvariantKind) -> Optional[int]:
        """Oracle value, memoized per run; None when undefined"""
        key = graph_key(graph)
        if self.cache.has_invariant(key, kind.value):
            return self.cache.get_invariant(key, kind.value)
        value = self.solver.invariant_or_none(graph, kind)
        self.cache.set_invariant(key, kind.value, value)
        return value

    def h_regime(self, h: Graph) -> HRegime:
        key = graph_key(h)
        regime = self.cache.get_regime(key)
        if regime is None:
            regime = HRegime(
                n=h.n,
                gamma=self.invariant(h, K.DOM),
                gamma_x2=self.invariant(h, K.DOUBLE),
                universal_count=len(graph_service.universal_vertices(h)),
            )
            self.cache.set_regime(key, regime)
        return regime

    def _require(self, assumptions: List[Assumption], name: str, holds: bool, detail: Optional[str] = None):
        assumptions.append(Assumption(name=name, holds=holds, detail=detail))
        if not holds:
            raise PremiseError(f"premise failed: {name}" + (f" ({detail})" if detail else ""))

    def _standard_premises(self, g: Graph, h: Graph) -> List[Assumption]:
        assumptions: List[Assumption] = []
        self._require(assumptions, "G has no isolated vertex", g.n > 0 and not graph_service.has_isolated_vertex(g))
        self._require(assumptions, "H is nontrivial", h.n >= 2, f"|V(H)| = {h.n}")
        return assumptions

    def gamma_lex(self, g: Graph, h: Graph) -> FormulaResult:
        assumptions = self._standard_premises(g, h)
        gamma_h = self.h_regime(h).gamma
        if gamma_h == 1:
            assumptions.append(Assumption(name="γ(H) = 1", holds=True))
            return FormulaResult(value=self.invariant(g, K.DOM), source="lex.domination.gamma_g", assumptions=assumptions)
        assumptions.append(Assumption(name="γ(H) >= 2", holds=True, detail=f"γ(H) = {gamma_h}"))
        return FormulaResult(value=self.invariant(g, K.TOTAL), source="lex.domination.gamma_t_g", assumptions=assumptions)

    def gamma_t_lex(self, g: Graph, h: Graph) -> FormulaResult:
        assumptions = self._standard_premises(g, h)
        return FormulaResult(value=self.invariant(g, K.TOTAL), source="lex.total_domination", assumptions=assumptions)

    def gamma_x2_lex_bounds(self, g: Graph, h: Graph) -> FormulaResult:
        assumptions = self._standard_premises(g, h)
        regime = self.h_regime(h)
        gt = self.invariant(g, K.TOTAL)
        rho = self.invariant(g, K.TWO_PACKING)
        gamma = self.invariant(g, K.DOM)
        gtr2 = self.invariant(g, K.TOTAL_ROMAN_2)
        terms: List[BoundTerm] = []

        def add(side: BoundSide, value: int, source: str, premise: str):
            terms.append(BoundTerm(side=side, value=value, source=source, premise=premise))

        add(BoundSide.LOWER, gt, "lex_x2.total_lower", "G isolated-free, H nontrivial")
        add(BoundSide.LOWER, 2 * rho, "lex_x2.packing_lower", "G isolated-free, H nontrivial")
        add(BoundSide.UPPER, 2 * gt, "lex_x2.total_upper", "G isolated-free, H nontrivial")
        if regime.gamma_x2 is not None:
            add(BoundSide.UPPER, gamma * regime.gamma_x2, "lex_x2.factor_product", "H isolated-free")
        if gamma == 1:
            add(BoundSide.LOWER, 2, "lex_x2.dominated_g", "γ(G) = 1")
            add(BoundSide.UPPER, 4, "lex_x2.dominated_g", "γ(G) = 1")
        if g.n >= 3 and graph_service.is_connected(g):
            add(BoundSide.UPPER, 2 * (2 * g.n // 3), "lex_x2.connected_order", "G connected, n >= 3")
        if regime.gamma == 1:
            add(BoundSide.UPPER, gtr2, "lex_x2.roman2_upper", "γ(H) = 1")
        else:
            add(BoundSide.LOWER, gtr2, "lex_x2.roman2_lower", "γ(H) >= 2")
        if regime.universal_count >= 2:
            add(BoundSide.UPPER, 2 * gamma, "lex_x2.two_universal", "H has >= 2 universal vertices")
        if regime.universal_count == 1:
            add(BoundSide.EQUAL, gtr2, "lex_x2.one_universal", "H has exactly one universal vertex")
        if graph_service.min_degree(g) >= 2:
            add(BoundSide.UPPER, self.invariant(g, K.DOUBLE_TOTAL), "lex_x2.double_total", "δ(G) >= 2")
            add(BoundSide.UPPER, g.n, "lex_x2.order", "δ(G) >= 2")
        if gamma == rho and regime.gamma_x2 == 2:
            add(BoundSide.EQUAL, 2 * gamma, "lex_x2.packing_equals_domination", "γ(G) = ρ(G), γ×2(H) = 2")
        if gtr2 in (gt, 2 * rho) and regime.gamma == 1:
            add(BoundSide.EQUAL, gtr2, "lex_x2.roman2_attains_lower", "γt{R2}(G) ∈ {γt(G), 2ρ(G)}, γ(H) = 1")
        if gtr2 == 2 * gt and regime.gamma >= 2:
            add(BoundSide.EQUAL, gtr2, "lex_x2.roman2_attains_upper", "γt{R2}(G) = 2γt(G), γ(H) >= 2")
        if graph_service.is_tree(g) and regime.gamma_x2 == 2:
            add(BoundSide.EQUAL, 2 * gamma, "lex_x2.tree", "G a tree, γ×2(H) = 2")

        lower = max(t.value for t in terms if t.side != BoundSide.UPPER)
        upper = min(t.value for t in terms if t.side != BoundSide.LOWER)
        if lower > upper:
            conflict = ", ".join(f"{t.source}={t.value}" for t in terms)
            raise LexdomError(f"inconsistent bounds [{lower}, {upper}]: {conflict}")
        logger.debug(f"γ×2 bounds for n(G)={g.n}, n(H)={h.n}: [{lower}, {upper}]")
        return FormulaResult(lower=lower, upper=upper, source="lex_x2.bounds", assumptions=assumptions, provenance=terms)

    def classify_small_value(self, g: Graph, h: Graph) -> SmallValueClassification:
        if g.n < 2 or h.n < 2:
            raise PremiseError("small-value classification needs nontrivial G and H")
        regime = self.h_regime(h)
        gamma_g = self.invariant(g, K.DOM)
        gamma_h = regime.gamma
        gx2_g = self.invariant(g, K.DOUBLE)
        gx2_h = regime.gamma_x2
        g2t_g = self.invariant(g, K.DOUBLE_TOTAL)
        ug = len(graph_service.universal_vertices(g))
        uh = regime.universal_count

        if gamma_g == 1 and gamma_h == 1 and (gx2_g == 2 or gx2_h == 2):
            return SmallValueClassification(value=SmallValue.TWO, condition="two", matches=["two"])

        is_p2 = g.n == 2 and g.size == 1
        g2t = INF if g2t_g is None else g2t_g
        conditions = [
            ("three.i", is_p2 and gamma_h == 2),
            ("three.ii", not is_p2 and ug >= 2 and gamma_h >= 2),
            ("three.iii", ug == 1 and (gamma_h == 2 or uh == 1)),
            ("three.iv", ug == 1 and g2t == 3 and gamma_h >= 3),
            ("three.v", gamma_g == 2 and g2t == 3),
            ("three.vi", gamma_g == 2 and gx2_g == 3 and 3 < g2t and gamma_h == 1),
        ]
        matches = [tag for tag, holds in conditions if holds]
        if matches:
            if len(matches) > 1:
                logger.debug(f"several value-3 conditions match: {matches}")
            return SmallValueClassification(value=SmallValue.THREE, condition=matches[0], matches=matches)
        return SmallValueClassification(value=SmallValue.AT_LEAST_FOUR)

    def gamma_x2_lex_formula(self, spec: FamilySpec, h: Graph) -> FormulaResult:
        kind = spec.kind
        p = spec.params
        assumptions: List[Assumption] = []
        if h.n == 0:
            raise PremiseError("H must be nonempty")
        regime = self.h_regime(h)
        gamma_h = regime.gamma
        gx2_h = INF if regime.gamma_x2 is None else regime.gamma_x2
        trivial_ok = kind == FamilyKind.CYCLE and gamma_h == 1
        if not trivial_ok:
            self._require(assumptions, "H is nontrivial", h.n >= 2, f"|V(H)| = {h.n}")
        regime_note = Assumption(name=f"γ(H) = {gamma_h}", holds=True)

        if kind == FamilyKind.COMPLETE:
            n = p[0]
            self._require(assumptions, "n >= 3", n >= 3, f"n = {n}")
            assumptions.append(regime_note)
            return FormulaResult(value=2 if gamma_h == 1 else 3, source="family.complete", assumptions=assumptions)

        if kind == FamilyKind.STAR:
            n = p[0] + 1
            self._require(assumptions, "n >= 3", n >= 3, f"n = {n}")
            assumptions.append(regime_note)
            assumptions.append(Assumption(name=f"γ×2(H) = {regime.gamma_x2}", holds=True))
            if gx2_h == 2:
                value = 2
            elif gamma_h <= 2:
                value = 3
            else:
                value = 4
            return FormulaResult(value=value, source="family.star", assumptions=assumptions)

        if kind == FamilyKind.DOUBLE_STAR:
            self._require(assumptions, "n2 >= n1 >= 2", min(p) >= 2, f"params = {p}")
            return FormulaResult(value=4, source="family.double_star", assumptions=assumptions)

        if kind == FamilyKind.COMPLETE_BIPARTITE:
            n1 = min(p)
            self._require(assumptions, "n2 >= n1 >= 2", n1 >= 2, f"params = {p}")
            assumptions.append(regime_note)
            value = 3 if n1 == 2 and gamma_h == 1 else 4
            return FormulaResult(value=value, source="family.complete_bipartite", assumptions=assumptions)

        if kind in (FamilyKind.PATH, FamilyKind.CYCLE):
            n = p[0]
            self._require(assumptions, "n >= 3", n >= 3, f"n = {n}")
            assumptions.append(regime_note)
            name = kind.value
            if gamma_h == 1:
                if kind == FamilyKind.CYCLE:
                    return FormulaResult(value=gamma_x2_cycle(n), source="cycle.gamma_h_1", assumptions=assumptions)
                assumptions.append(Assumption(name=f"γ×2(H) = {regime.gamma_x2}", holds=True))
                value = 2 * ceil(n / 3)
                if gx2_h >= 3 and n % 3 == 0:
                    value += 1
                return FormulaResult(value=value, source="path.gamma_h_1", assumptions=assumptions)
            if gamma_h == 2:
                return FormulaResult(value=gamma_x2_path_cycle_gamma2(n), source=f"{name}.gamma_h_2", assumptions=assumptions)
            if kind == FamilyKind.CYCLE:
                return FormulaResult(value=n, source="cycle.gamma_h_3", assumptions=assumptions)
            return FormulaResult(value=2 * gamma_t_path_or_cycle(n), source="path.gamma_h_3", assumptions=assumptions)

        if kind == FamilyKind.FAMILY_HK:
            k = p[0]
            self._require(assumptions, "γ(H) >= 2", gamma_h >= 2, f"γ(H) = {gamma_h}")
            g = graph_service.family(spec)
            g2t = self.invariant(g, K.DOUBLE_TOTAL)
            self._require(assumptions, "γ2,t(G) = k", g2t == k, f"γ2,t = {g2t}, k = {k}")
            return FormulaResult(value=k, source="family.hk", assumptions=assumptions)

        raise PremiseError(f"no closed formula for family {kind.value}")

    def check_2gamma_t_equivalence(self, g: Graph, h: Graph) -> EquivalenceFlags:
        self._standard_premises(g, h)
        order = g.n * h.n
        if order > settings.FUNCTION_PRODUCT_CAP:
            raise CapExceededError(
                f"product order {order} exceeds function-product cap {settings.FUNCTION_PRODUCT_CAP}"
            )
        product_graph, _ = product_service.lex_product(g, h)
        gx2_p = self.invariant(product_graph, K.DOUBLE)
        gtr_p = self.invariant(product_graph, K.TOTAL_ROMAN)
        gt_g = self.invariant(g, K.TOTAL)
        gamma_g = self.invariant(g, K.DOM)
        gamma_h = self.h_regime(h).gamma
        a = gx2_p == 2 * gt_g
        b = gx2_p == gtr_p and (gt_g == gamma_g or gamma_h >= 2)
        return EquivalenceFlags(
            a=a, b=b, gx2_product=gx2_p, gt_g=gt_g, gamma_g=gamma_g, gtr_product=gtr_p, gamma_h=gamma_h
        )


formula_service = FormulaService()
