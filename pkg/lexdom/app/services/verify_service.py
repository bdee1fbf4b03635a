"""Identity and bound checking sweeps over small-graph corpora.

Each check evaluates independent items (single graphs, (G, H) pairs or family
cells) and folds the per-item outcomes into one CheckReport. Items are
evaluated with joblib; results come back in item order, so a report depends
only on the corpus.
"""

import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import networkx as nx
from joblib import Parallel, delayed
from pydantic import BaseModel, Field
from tqdm import tqdm

from app.core.config import settings
from app.models.graph import FamilyKind, FamilySpec, Graph
from app.models.invariants import InvariantKind
from app.models.report import CheckId, CheckReport, Counterexample, CorpusSource, CorpusSpec, Verdict
from app.schemas.results import HuntHit, SmallValue
from app.services.formula_service import FormulaService
from app.services.graph_service import PREDICATES, graph_service, nontrivial
from app.services.product_service import product_service
from app.services.solver_service import SolverService, solver_service
from app.utils.graph6 import read_graph6_file, write_graph6
from app.utils.invariant_cache import InvariantCache
from app.utils.validators import CapExceededError, GraphValidationError, LexdomError, PremiseError

logger = logging.getLogger(__name__)

K = InvariantKind

SKIPPED_ALL = "SKIPPED-ALL: no item of the corpus was tested"

CHECK_TITLES: Dict[CheckId, str] = {
    CheckId.V1: "γt ≤ γt{R2} ≤ γtR ≤ 2γt and γt{R2} ≤ γ×2",
    CheckId.V2: "γ×2 = γt forces every γ×2-set to induce disjoint K2's",
    CheckId.V3: "γt{R2} = 2γt iff γt{R2} = γtR and γt = γ",
    CheckId.V4: "γ×2 = 2 iff γt{R2} = 2 iff two universal vertices",
    CheckId.V5: "edge deletion never decreases γ×2",
    CheckId.V6: "γ×2(G∘H) = γt{R2}(G∘H)",
    CheckId.V7: "γ×2(G∘H) lies in the assembled bounds interval",
    CheckId.V8: "γ×2(G∘H) = 2γt(G) iff γ×2 = γtR on G∘H and (γt(G) = γ(G) or γ(H) ≥ 2)",
    CheckId.V9: "γ×2(G∘H) ≤ 2⌊2n/3⌋ for connected G, tight on rooted products",
    CheckId.V10: "some γ×2(G∘H)-set meets every copy of H at most twice",
    CheckId.V11: "bounds from the universal vertices and domination number of H",
    CheckId.V12: "equalities for γ(G) = ρ(G), extreme γt{R2}(G) and trees",
    CheckId.V13: "γ×2(G∘H) ≤ γ2,t(G) ≤ n and γ2,t(G∘H) ≤ γ2,t(G) when δ(G) ≥ 2",
    CheckId.V14: "closed formulas for family products match the oracle",
    CheckId.V15: "small-value classification agrees with the oracle",
    CheckId.V16: "projection sums of minimum sets and the path end pattern",
}

# extra V14 families beyond paths and cycles
EXTRA_FAMILIES = (
    "complete:3", "complete:4", "complete:5",
    "star:2", "star:3", "star:4", "star:5",
    "dstar:2,2", "dstar:2,3",
    "cbip:2,2", "cbip:2,3", "cbip:3,3",
    "hk:3:1,1,1", "hk:3:2,1,1", "hk:4:1,1,1,1",
)


class ItemOutcome(BaseModel):
    skip: Optional[str] = None
    counterexamples: List[Counterexample] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)


class CaseCell(BaseModel):
    n: int
    column: str
    formula: Optional[int] = None
    oracle: Optional[int] = None

    @property
    def match(self) -> Optional[bool]:
        if self.formula is None or self.oracle is None:
            return None
        return self.formula == self.oracle


def default_corpus() -> CorpusSpec:
    return CorpusSpec(
        source=CorpusSource.DEFAULT,
        g_n_max=settings.CORPUS_G_N_MAX,
        h_n_max=settings.CORPUS_H_N_MAX,
        single_n_max=settings.CORPUS_SINGLE_N_MAX,
        product_cap=settings.PRODUCT_CAP,
    )


def _key(graph: Graph) -> str:
    return write_graph6(graph)


def _cx(g: Graph, h: Optional[Graph], observed: str, expected: str, detail: Optional[str] = None) -> Counterexample:
    return Counterexample(g=_key(g), h=_key(h) if h is not None else None, observed=observed, expected=expected, detail=detail)


def _evaluate(service: "VerifyService", method: str, item) -> ItemOutcome:
    try:
        return getattr(service, method)(item)
    except CapExceededError:
        return ItemOutcome(skip="cap exceeded")
    except PremiseError:
        return ItemOutcome(skip="premise does not hold")


class VerifyService:
    def __init__(
        self,
        solver: Optional[SolverService] = None,
        workers: Optional[int] = None,
        show_progress: Optional[bool] = None,
    ):
        self.solver = solver or solver_service
        self.formulas = FormulaService(solver=self.solver, cache=InvariantCache())
        self.workers = settings.WORKERS if workers is None else workers
        self.show_progress = settings.SHOW_PROGRESS if show_progress is None else show_progress
        self._corpus_cache: Dict[str, Tuple[List[Graph], List[Tuple[Graph, Graph]]]] = {}
        self.product_cap = settings.PRODUCT_CAP

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_corpus_cache"] = {}
        return state

    def inv(self, graph: Graph, kind: InvariantKind) -> Optional[int]:
        return self.formulas.invariant(graph, kind)

    def product_inv(self, g: Graph, h: Graph, kind: InvariantKind) -> Optional[int]:
        product_graph, _ = product_service.lex_product(g, h)
        return self.inv(product_graph, kind)

    # corpus

    def _enumerate(self, n_max: int, predicate: Optional[Callable[[Graph], bool]] = None) -> List[Graph]:
        graphs: List[Graph] = []
        for n in range(1, n_max + 1):
            graphs.extend(graph_service.enumerate_labeled_graphs(n, predicate))
        return graphs

    def corpus(self, spec: CorpusSpec) -> Tuple[List[Graph], List[Tuple[Graph, Graph]]]:
        """Single graphs and (G, H) pairs of a corpus"""
        key = spec.model_dump_json()
        if key in self._corpus_cache:
            return self._corpus_cache[key]
        if spec.predicate not in PREDICATES:
            raise GraphValidationError(f"unknown predicate {spec.predicate!r}")
        g_filter = PREDICATES[spec.predicate]
        singles: List[Graph] = []
        pairs: List[Tuple[Graph, Graph]] = []
        if spec.source in (CorpusSource.DEFAULT, CorpusSource.ENUMERATE):
            singles = self._enumerate(spec.single_n_max)
            gs = self._enumerate(spec.g_n_max, g_filter)
            hs = self._enumerate(spec.h_n_max, nontrivial)
            pairs = [(g, h) for g in gs for h in hs]
        elif spec.source == CorpusSource.GRAPH6_FILE:
            singles = read_graph6_file(spec.path)
            gs = [g for g in singles if g.n and g_filter(g)]
            hs = [h for h in singles if nontrivial(h)]
            pairs = [(g, h) for g in gs for h in hs]
        logger.info(f"Corpus {spec.source.value}: {len(singles)} graphs, {len(pairs)} pairs")
        self._corpus_cache[key] = (singles, pairs)
        return singles, pairs

    def _with_grid(self, spec: CorpusSpec) -> bool:
        return spec.include_grid and spec.source in (CorpusSource.DEFAULT, CorpusSource.FAMILY_GRID)

    def _h_pool(self) -> List[Graph]:
        return [graph_service.family(FamilySpec.parse(text)) for text in settings.FAMILY_H_POOL]

    def grid_items(self, spec: CorpusSpec) -> List[Tuple[FamilySpec, Graph]]:
        if not self._with_grid(spec):
            return []
        specs = []
        for n in range(settings.FAMILY_N_MIN, settings.FAMILY_N_MAX + 1):
            specs.append(FamilySpec.create(FamilyKind.PATH, (n,)))
            specs.append(FamilySpec.create(FamilyKind.CYCLE, (n,)))
        specs += [FamilySpec.parse(text) for text in EXTRA_FAMILIES]
        return [(fs, h) for fs in specs for h in self._h_pool()]

    # sweeps

    def _sweep(self, check: CheckId, method: str, items: Sequence) -> List[ItemOutcome]:
        iterator = tqdm(items, desc=check.value, disable=not self.show_progress)
        if self.workers == 1:
            return [_evaluate(self, method, item) for item in iterator]
        return Parallel(n_jobs=self.workers)(delayed(_evaluate)(self, method, item) for item in iterator)

    def _items(self, check: CheckId, spec: CorpusSpec) -> Tuple[str, list]:
        singles, pairs = self.corpus(spec)
        grid = self._with_grid(spec)
        if check in (CheckId.V1, CheckId.V3, CheckId.V4, CheckId.V5):
            return f"_check_{check.value.lower()}", list(singles)
        if check == CheckId.V2:
            return "_check_v2", [(g, None) for g in singles] + list(pairs)
        if check == CheckId.V9:
            extra = [("rooted", None)] if grid else []
            return "_check_v9", list(pairs) + extra
        if check == CheckId.V14:
            return "_check_v14", self.grid_items(spec)
        if check == CheckId.V16:
            extra = [("end_pattern", n) for n in (6, 7)] if grid else []
            return "_check_v16", list(pairs) + extra
        return f"_check_{check.value.lower()}", list(pairs)

    def run_check(self, check: CheckId, corpus: Optional[CorpusSpec] = None) -> CheckReport:
        corpus = corpus or default_corpus()
        if corpus.product_cap > settings.GRAPH_CAP:
            raise CapExceededError(f"product cap {corpus.product_cap} exceeds {settings.GRAPH_CAP}")
        self.product_cap = corpus.product_cap
        # memo entries live for one check
        self.formulas.cache.clear()
        start = time.time()
        method, items = self._items(check, corpus)
        outcomes = self._sweep(check, method, items)

        tested, skipped = 0, 0
        reasons: Dict[str, int] = {}
        counterexamples: List[Counterexample] = []
        notes: List[str] = []
        for outcome in outcomes:
            if outcome.skip:
                skipped += 1
                reasons[outcome.skip] = reasons.get(outcome.skip, 0) + 1
                continue
            tested += 1
            counterexamples.extend(outcome.counterexamples)
            notes.extend(outcome.notes)

        report = CheckReport(
            check=check,
            title=CHECK_TITLES[check],
            tested=tested,
            skipped=skipped,
            skip_reasons=dict(sorted(reasons.items())),
            verdict=Verdict.FAIL if counterexamples else Verdict.PASS,
            counterexamples=counterexamples,
            notes=notes,
            wall_time=time.time() - start,
        )
        if tested == 0:
            report.warnings.append(SKIPPED_ALL)
            logger.warning(f"{check.value}: {SKIPPED_ALL}")
        if counterexamples:
            logger.warning(f"{check.value}: {len(counterexamples)} counterexample(s)")
        logger.info(
            f"{check.value}: {report.verdict.value} | tested={tested} skipped={skipped} | "
            f"Time: {report.wall_time:.2f}s"
        )
        return report

    def run_all(self, corpus: Optional[CorpusSpec] = None) -> List[CheckReport]:
        reports = []
        for check in CheckId:
            try:
                reports.append(self.run_check(check, corpus))
            except LexdomError as e:
                logger.error(f"{check.value} aborted: {e}")
                reports.append(
                    CheckReport(
                        check=check,
                        title=CHECK_TITLES[check],
                        verdict=Verdict.FAIL,
                        counterexamples=[Counterexample(g="-", observed="error", expected="completed sweep", detail=str(e))],
                    )
                )
        return reports

    # single-graph checks

    def _check_v1(self, g: Graph) -> ItemOutcome:
        if not self.solver.is_feasible(g, K.TOTAL):
            return ItemOutcome(skip="isolated vertex")
        gt, gtr2 = self.inv(g, K.TOTAL), self.inv(g, K.TOTAL_ROMAN_2)
        gtr, gx2 = self.inv(g, K.TOTAL_ROMAN), self.inv(g, K.DOUBLE)
        if gt <= gtr2 <= gtr <= 2 * gt and gtr2 <= gx2:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(
            g, None, f"γt={gt}, γt{{R2}}={gtr2}, γtR={gtr}, γ×2={gx2}", "γt ≤ γt{R2} ≤ γtR ≤ 2γt, γt{R2} ≤ γ×2"
        )])

    def _check_v2(self, item: Tuple[Graph, Optional[Graph]]) -> ItemOutcome:
        g, h = item
        if h is None:
            target, name = g, "G"
        else:
            if g.n * h.n > settings.MIN_SET_PRODUCT_CAP:
                return ItemOutcome(skip="product above minimum-set cap")
            target, _ = product_service.lex_product(g, h)
            name = "G∘H"
        if not self.solver.is_feasible(target, K.DOUBLE):
            return ItemOutcome(skip="isolated vertex")
        gx2, gt = self.inv(target, K.DOUBLE), self.inv(target, K.TOTAL)
        if gx2 != gt:
            return ItemOutcome(skip="γ×2 ≠ γt")
        for d in self.solver.enumerate_minimum_sets(target, K.DOUBLE):
            if not graph_service.is_k2_union(target, d):
                return ItemOutcome(counterexamples=[_cx(
                    g, h, f"γ×2({name})-set {sorted(d)} is not a union of K2's", "⟨D⟩ ≅ ∪K2"
                )])
        return ItemOutcome()

    def _check_v3(self, g: Graph) -> ItemOutcome:
        if not self.solver.is_feasible(g, K.TOTAL):
            return ItemOutcome(skip="isolated vertex")
        gt, gtr2 = self.inv(g, K.TOTAL), self.inv(g, K.TOTAL_ROMAN_2)
        gtr, gamma = self.inv(g, K.TOTAL_ROMAN), self.inv(g, K.DOM)
        left = gtr2 == 2 * gt
        right = gtr2 == gtr and gt == gamma
        if left == right:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(
            g, None, f"γt{{R2}}=2γt is {left}, (γt{{R2}}=γtR and γt=γ) is {right}", "equivalent statements",
            f"γt={gt}, γt{{R2}}={gtr2}, γtR={gtr}, γ={gamma}",
        )])

    def _check_v4(self, g: Graph) -> ItemOutcome:
        if not self.solver.is_feasible(g, K.DOUBLE):
            return ItemOutcome(skip="isolated vertex")
        gx2, gtr2 = self.inv(g, K.DOUBLE), self.inv(g, K.TOTAL_ROMAN_2)
        universal = len(graph_service.universal_vertices(g))
        flags = (gx2 == 2, gtr2 == 2, universal >= 2)
        if len(set(flags)) == 1:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(
            g, None, f"γ×2={gx2}, γt{{R2}}={gtr2}, universal vertices={universal}", "all three statements agree"
        )])

    def _check_v5(self, g: Graph) -> ItemOutcome:
        if not self.solver.is_feasible(g, K.DOUBLE):
            return ItemOutcome(skip="isolated vertex")
        deletable = [(u, v) for u, v in g.edges() if g.degree(u) > 1 and g.degree(v) > 1]
        if not deletable:
            return ItemOutcome(skip="no edge keeps minimum degree ≥ 1")
        base = self.inv(g, K.DOUBLE)
        found = []
        for u, v in deletable:
            value = self.inv(graph_service.remove_edge(g, u, v), K.DOUBLE)
            if value < base:
                found.append(_cx(g, None, f"γ×2(G-{u}{v})={value}", f"≥ γ×2(G)={base}"))
        return ItemOutcome(counterexamples=found)

    # product checks

    def _premise_pair(self, g: Graph, h: Graph, cap: Optional[int] = None) -> Optional[ItemOutcome]:
        if g.n == 0 or graph_service.has_isolated_vertex(g):
            return ItemOutcome(skip="G has an isolated vertex")
        if h.n < 2:
            return ItemOutcome(skip="H is trivial")
        limit = self.product_cap if cap is None else min(cap, self.product_cap)
        if g.n * h.n > limit:
            return ItemOutcome(skip="product above cap")
        return None

    def _check_v6(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h, settings.FUNCTION_PRODUCT_CAP)
        if skip:
            return skip
        gx2 = self.product_inv(g, h, K.DOUBLE)
        gtr2 = self.product_inv(g, h, K.TOTAL_ROMAN_2)
        if gx2 == gtr2:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(g, h, f"γ×2(G∘H)={gx2}, γt{{R2}}(G∘H)={gtr2}", "equal")])

    def _check_v7(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        value = self.product_inv(g, h, K.DOUBLE)
        try:
            bounds = self.formulas.gamma_x2_lex_bounds(g, h)
        except PremiseError:
            raise
        except LexdomError as e:
            return ItemOutcome(counterexamples=[_cx(g, h, f"γ×2(G∘H)={value}", "consistent bounds", str(e))])
        if bounds.contains(value):
            return ItemOutcome()
        violated = [
            f"{t.source}={t.value}" for t in bounds.provenance
            if (t.side.value == "lower" and value < t.value)
            or (t.side.value == "upper" and value > t.value)
            or (t.side.value == "equal" and value != t.value)
        ]
        return ItemOutcome(counterexamples=[_cx(
            g, h, f"γ×2(G∘H)={value}", f"in [{bounds.lower}, {bounds.upper}]", "violated: " + ", ".join(violated)
        )])

    def _check_v8(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h, settings.FUNCTION_PRODUCT_CAP)
        if skip:
            return skip
        flags = self.formulas.check_2gamma_t_equivalence(g, h)
        if flags.a == flags.b:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(
            g, h, f"(a)={flags.a}, (b)={flags.b}", "(a) iff (b)",
            f"γ×2(G∘H)={flags.gx2_product}, γtR(G∘H)={flags.gtr_product}, γt(G)={flags.gt_g}, "
            f"γ(G)={flags.gamma_g}, γ(H)={flags.gamma_h}",
        )])

    def _check_v9(self, item) -> ItemOutcome:
        g, h = item
        if g == "rooted":
            return self._rooted_tightness()
        if g.n < 3 or not graph_service.is_connected(g):
            return ItemOutcome(skip="G not connected of order ≥ 3")
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        value = self.product_inv(g, h, K.DOUBLE)
        bound = 2 * (2 * g.n // 3)
        if value <= bound:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(g, h, f"γ×2(G∘H)={value}", f"≤ 2⌊2n/3⌋={bound}")])

    def _rooted_tightness(self) -> ItemOutcome:
        base = graph_service.family(FamilySpec.create(FamilyKind.PATH, (2,)))
        p3 = graph_service.family(FamilySpec.create(FamilyKind.PATH, (3,)))
        g = graph_service.rooted_product(base, p3, graph_service.leaf(p3))
        h = graph_service.family(FamilySpec.create(FamilyKind.EMPTY, (3,)))
        if g.n * h.n > self.product_cap:
            return ItemOutcome(skip="product above cap")
        value = self.product_inv(g, h, K.DOUBLE)
        expected = 4 * base.n
        if value == expected == 2 * (2 * g.n // 3):
            return ItemOutcome(notes=[f"rooted product P2•P3 with N3: γ×2 = {value}"])
        return ItemOutcome(counterexamples=[_cx(g, h, f"γ×2={value}", f"4|V(G)| = 2⌊2n/3⌋ = {expected}")])

    def _check_v10(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h, settings.MIN_SET_PRODUCT_CAP)
        if skip:
            return skip
        product_graph, idx = product_service.lex_product(g, h)
        for s in self.solver.enumerate_minimum_sets(product_graph, K.DOUBLE):
            if max(product_service.projection_profile(s, idx).counts) <= 2:
                return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(g, h, "every γ×2(G∘H)-set has a copy with ≥ 3 vertices", "some set with ≤ 2 per copy")])

    def _check_v11(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        value = self.product_inv(g, h, K.DOUBLE)
        regime = self.formulas.h_regime(h)
        gtr2 = self.inv(g, K.TOTAL_ROMAN_2)
        gamma = self.inv(g, K.DOM)
        found = []
        if regime.gamma == 1 and value > gtr2:
            found.append(_cx(g, h, f"γ×2(G∘H)={value}", f"≤ γt{{R2}}(G)={gtr2}", "γ(H) = 1"))
        if regime.universal_count >= 2 and value > 2 * gamma:
            found.append(_cx(g, h, f"γ×2(G∘H)={value}", f"≤ 2γ(G)={2 * gamma}", "H has ≥ 2 universal vertices"))
        if regime.universal_count == 1 and value != gtr2:
            found.append(_cx(g, h, f"γ×2(G∘H)={value}", f"= γt{{R2}}(G)={gtr2}", "H has one universal vertex"))
        if regime.gamma >= 2 and value < gtr2:
            found.append(_cx(g, h, f"γ×2(G∘H)={value}", f"≥ γt{{R2}}(G)={gtr2}", "γ(H) ≥ 2"))
        return ItemOutcome(counterexamples=found)

    def _check_v12(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        regime = self.formulas.h_regime(h)
        gamma, rho = self.inv(g, K.DOM), self.inv(g, K.TWO_PACKING)
        gt, gtr2 = self.inv(g, K.TOTAL), self.inv(g, K.TOTAL_ROMAN_2)
        claims = []
        if gamma == rho and regime.gamma_x2 == 2:
            claims.append((2 * gamma, "γ(G) = ρ(G), γ×2(H) = 2"))
        if gtr2 in (gt, 2 * rho) and regime.gamma == 1:
            claims.append((gtr2, "γt{R2}(G) ∈ {γt(G), 2ρ(G)}, γ(H) = 1"))
        if gtr2 == 2 * gt and regime.gamma >= 2:
            claims.append((gtr2, "γt{R2}(G) = 2γt(G), γ(H) ≥ 2"))
        if graph_service.is_tree(g) and regime.gamma_x2 == 2:
            claims.append((2 * gamma, "G a tree, γ×2(H) = 2"))
        if not claims:
            return ItemOutcome(skip="no premise applies")
        value = self.product_inv(g, h, K.DOUBLE)
        return ItemOutcome(counterexamples=[
            _cx(g, h, f"γ×2(G∘H)={value}", f"= {expected}", premise)
            for expected, premise in claims if value != expected
        ])

    def _check_v13(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        if graph_service.min_degree(g) < 2:
            return ItemOutcome(skip="δ(G) < 2")
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        value = self.product_inv(g, h, K.DOUBLE)
        g2t = self.inv(g, K.DOUBLE_TOTAL)
        g2t_product = self.product_inv(g, h, K.DOUBLE_TOTAL)
        found = []
        if not value <= g2t <= g.n:
            found.append(_cx(g, h, f"γ×2(G∘H)={value}, γ2,t(G)={g2t}", f"γ×2(G∘H) ≤ γ2,t(G) ≤ n={g.n}"))
        if g2t_product > g2t:
            found.append(_cx(g, h, f"γ2,t(G∘H)={g2t_product}", f"≤ γ2,t(G)={g2t}"))
        return ItemOutcome(counterexamples=found)

    def _check_v14(self, item: Tuple[FamilySpec, Graph]) -> ItemOutcome:
        spec, h = item
        g = graph_service.family(spec)
        if g.n * h.n > self.product_cap:
            return ItemOutcome(skip="product above cap")
        result = self.formulas.gamma_x2_lex_formula(spec, h)
        if result.value > settings.GRID_TARGET_LIMIT:
            return ItemOutcome(skip="formula value above grid target limit")
        value = self.product_inv(g, h, K.DOUBLE)
        if value == result.value:
            return ItemOutcome()
        return ItemOutcome(counterexamples=[_cx(
            g, h, f"γ×2={value}", f"{result.value} ({result.source})", spec.label
        )])

    def _check_v15(self, item: Tuple[Graph, Graph]) -> ItemOutcome:
        g, h = item
        skip = self._premise_pair(g, h)
        if skip:
            return skip
        value = self.product_inv(g, h, K.DOUBLE)
        result = self.formulas.classify_small_value(g, h)
        observed = SmallValue.TWO if value == 2 else SmallValue.THREE if value == 3 else SmallValue.AT_LEAST_FOUR
        notes = []
        if len(result.matches) > 1:
            notes.append(f"{_key(g)} {_key(h)}: conditions {', '.join(result.matches)} all hold")
        if observed == result.value:
            return ItemOutcome(notes=notes)
        return ItemOutcome(notes=notes, counterexamples=[_cx(
            g, h, f"γ×2(G∘H)={value}", f"class {result.value.value} via {result.condition}"
        )])

    def _check_v16(self, item) -> ItemOutcome:
        g, h = item
        if g == "end_pattern":
            return self._end_pattern(h)
        if g.n < 2 or not graph_service.is_connected(g):
            return ItemOutcome(skip="G not connected nontrivial")
        skip = self._premise_pair(g, h, settings.MIN_SET_PRODUCT_CAP)
        if skip:
            return skip
        gamma_h = self.formulas.h_regime(h).gamma
        if gamma_h == 1:
            return ItemOutcome(skip="γ(H) = 1")
        product_graph, idx = product_service.lex_product(g, h)
        found = []
        for s in self.solver.enumerate_minimum_sets(product_graph, K.DOUBLE):
            profile = product_service.projection_profile(s, idx)
            if max(profile.counts) > 2:
                continue
            for x in range(g.n):
                around = sum(profile.counts[u] for u in g.neighbors(x))
                if x in profile.A:
                    need = 2 if gamma_h >= 3 else 1
                else:
                    need = 2
                if around < need:
                    found.append(_cx(
                        g, h, f"Σ over N({x}) = {around} for set {sorted(s)}", f"≥ {need}",
                        f"x in {'A' if x in profile.A else 'B' if x in profile.B else 'C'}, γ(H)={gamma_h}",
                    ))
                    break
            if found:
                break
        return ItemOutcome(counterexamples=found)

    def _end_pattern(self, n: int) -> ItemOutcome:
        g = graph_service.family(FamilySpec.create(FamilyKind.PATH, (n,)))
        h = graph_service.family(FamilySpec.create(FamilyKind.EMPTY, (3,)))
        product_graph, idx = product_service.lex_product(g, h)
        for s in self.solver.enumerate_minimum_sets(product_graph, K.DOUBLE):
            c = product_service.projection_profile(s, idx).counts
            if c[n - 1] == 0 and c[n - 4] == 0 and c[n - 2] >= 2 and c[n - 3] >= 2:
                return ItemOutcome(notes=[f"P{n}∘N3 end pattern witnessed by counts {list(c)}"])
        return ItemOutcome(counterexamples=[_cx(g, h, "no minimum set with the end pattern", "u_n, u_{n-3} ∈ C and u_{n-1}, u_{n-2} ∈ A")])

    # exploration and tables

    def hunt_equality(self, corpus: Optional[CorpusSpec] = None) -> List[HuntHit]:
        corpus = corpus or default_corpus().model_copy(update={"single_n_max": settings.HUNT_N_MAX})
        singles, _ = self.corpus(corpus)
        hits = []
        for g in tqdm(singles, desc="hunt", disable=not self.show_progress):
            if g.n < 2 or not self.solver.is_feasible(g, K.DOUBLE):
                continue
            gx2, gtr2 = self.inv(g, K.DOUBLE), self.inv(g, K.TOTAL_ROMAN_2)
            if gx2 == gtr2:
                hits.append(HuntHit(graph6=_key(g), n=g.n, value=gx2, factorization=self._factorization(g, singles)))
        logger.info(f"Hunt: {len(hits)} of {len(singles)} graphs have γ×2 = γt{{R2}}")
        return hits

    def _factorization(self, g: Graph, pool: List[Graph]) -> Optional[str]:
        target = g.to_networkx()
        for a in range(2, g.n // 2 + 1):
            if g.n % a:
                continue
            b = g.n // a
            for left in (x for x in pool if x.n == a):
                for right in (y for y in pool if y.n == b):
                    product_graph, _ = product_service.lex_product(left, right)
                    if product_graph.size != g.size:
                        continue
                    if nx.is_isomorphic(product_graph.to_networkx(), target):
                        return f"{_key(left)}∘{_key(right)}"
        return None

    def case_table(self, kind: FamilyKind, hs: Sequence[Tuple[str, Graph]], n_range: Sequence[int]) -> List[CaseCell]:
        """Formula and oracle values of γ×2 on P_n∘H or C_n∘H, one column per H"""
        cells = []
        for n in n_range:
            spec = FamilySpec.create(kind, (n,))
            g = graph_service.family(spec)
            for column, h in hs:
                cell = CaseCell(n=n, column=column)
                try:
                    cell.formula = self.formulas.gamma_x2_lex_formula(spec, h).value
                except PremiseError:
                    cells.append(cell)
                    continue
                if g.n * h.n <= self.product_cap and cell.formula <= settings.GRID_TARGET_LIMIT:
                    cell.oracle = self.product_inv(g, h, K.DOUBLE)
                cells.append(cell)
        return cells

    def default_case_columns(self) -> List[Tuple[str, Graph]]:
        specs = [
            ("γ(H)=1, γ×2(H)=2: K2", "complete:2"),
            ("γ(H)=1, γ×2(H)≥3: P3", "path:3"),
            ("γ(H)=2: N2", "empty:2"),
            ("γ(H)≥3: N3", "empty:3"),
        ]
        return [(label, graph_service.family(FamilySpec.parse(text))) for label, text in specs]

