import pytest

from app.models.invariants import InvariantKind, WeightFn
from app.services.construction_service import (
    ConstructionService,
    SchemeAction,
    SchemeRow,
    lex_double_dominates,
)
from app.services.formula_service import gamma_x2_path_cycle_gamma2
from app.services.graph_service import graph_service
from app.services.product_service import PairIndex, product_service
from app.utils.validators import GraphValidationError, PremiseError
from tests.conftest import fam

K = InvariantKind


@pytest.fixture
def constructions(solver, formulas):
    return ConstructionService(solver=solver, formulas=formulas)


def test_scheme_rows():
    row = SchemeRow.for_path(7)
    assert row.counts == (0, 2, 1, 0, 1, 2, 0)
    assert row.actions[1] == SchemeAction.DOTS2_DOM
    assert row.cardinality == 6
    assert SchemeRow.for_path(8).counts == (0, 2, 1, 0, 1, 2, 2, 0)
    assert SchemeRow.for_path(14).counts == (0, 2, 1, 0, 1, 2, 0) * 2
    assert SchemeRow.for_path(15).counts[-8:] == (0, 2, 1, 0, 1, 2, 2, 0)
    with pytest.raises(PremiseError):
        SchemeRow.for_path(1)


@pytest.mark.parametrize("n", range(2, 30))
def test_scheme_cardinality_matches_formula(n):
    row = SchemeRow.for_path(n)
    assert len(row.counts) == n
    assert row.cardinality == gamma_x2_path_cycle_gamma2(n)


def test_path_scheme_p7(constructions):
    h = fam("path:4")
    s = constructions.path_scheme_gamma2(7, h, (1, 2), 0)
    idx = PairIndex(nG=7, nH=4)
    assert len(s) == 6
    assert product_service.projection_profile(s, idx).counts == (0, 2, 1, 0, 1, 2, 0)


@pytest.mark.parametrize("n", range(2, 21))
@pytest.mark.parametrize("h_text", ["path:4", "empty:2"])
def test_path_scheme_sweep(constructions, n, h_text):
    h = fam(h_text)
    s = constructions.path_scheme_gamma2(n, h)
    idx = PairIndex(nG=n, nH=h.n)
    assert len(s) == gamma_x2_path_cycle_gamma2(n)
    assert product_service.projection_profile(s, idx).counts == SchemeRow.for_path(n).counts
    assert lex_double_dominates(fam(f"path:{n}"), h, s, idx)


def test_path_scheme_default_pair(constructions):
    h = fam("path:4")
    assert constructions.default_dom_pair(h) == (0, 2)
    s = constructions.path_scheme_gamma2(14, h)
    assert len(s) == 12


def test_path_scheme_rejects_bad_pair(constructions):
    with pytest.raises(PremiseError):
        constructions.path_scheme_gamma2(7, fam("path:4"), (0, 1))
    with pytest.raises(GraphValidationError):
        constructions.path_scheme_gamma2(7, fam("path:4"), (1, 9))


def test_path_scheme_beyond_product_cap(constructions):
    # 20 * 4 vertices: checked on the factors
    s = constructions.path_scheme_gamma2(20, fam("path:4"), (1, 2))
    assert len(s) == gamma_x2_path_cycle_gamma2(20)


def test_factor_check_agrees_with_product(solver):
    g, h = fam("path:5"), fam("empty:2")
    product, idx = product_service.lex_product(g, h)
    full_blocks = product_service.pairs_to_set([(1, 0), (1, 1), (3, 0), (3, 1)], idx)
    dominating = product_service.pairs_to_set([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)], idx)
    for s in (full_blocks, dominating):
        assert lex_double_dominates(g, h, s, idx) == solver.validate(product, K.DOUBLE, s)


def test_small_value_case_i(constructions, solver):
    g, h = fam("path:2"), fam("path:4")
    s = constructions.small_value_witness(g, h, "i")
    product, _ = product_service.lex_product(g, h)
    assert len(s) == 3
    assert solver.validate(product, K.DOUBLE, s)


def test_small_value_case_premise(constructions):
    with pytest.raises(PremiseError):
        constructions.small_value_witness(fam("complete:3"), fam("complete:2"), "i")
    with pytest.raises(GraphValidationError):
        constructions.small_value_witness(fam("path:2"), fam("path:4"), "vii")


def test_small_value_cases_from_classifier(constructions, formulas):
    pairs = [
        ("complete:3", "empty:2"),
        ("star:3", "path:4"),
        ("cycle:4", "complete:2"),
        ("path:2", "path:4"),
    ]
    for g_text, h_text in pairs:
        g, h = fam(g_text), fam(h_text)
        for tag in formulas.classify_small_value(g, h).matches:
            if tag.startswith("three."):
                assert len(constructions.small_value_witness(g, h, tag.split(".")[1])) == 3


# one universal vertex 0 and the triangle {0, 1, 2} double-totally dominating
ONE_UNIVERSAL_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 4)]
# triangle {0, 1, 2} with one pendant triangle per edge, no universal vertex
SUN_EDGES = [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]


@pytest.mark.parametrize("n,edges,h_text,case", [
    (5, ONE_UNIVERSAL_EDGES, "empty:3", "iv"),
    (5, ONE_UNIVERSAL_EDGES, "empty:4", "iv"),
    (6, SUN_EDGES, "path:3", "v"),
    (6, SUN_EDGES, "empty:2", "v"),
])
def test_small_value_double_total_cases(constructions, formulas, solver, n, edges, h_text, case):
    g, h = graph_service.build_graph(n, edges), fam(h_text)
    assert formulas.classify_small_value(g, h).condition == f"three.{case}"
    s = constructions.small_value_witness(g, h, case)
    product, idx = product_service.lex_product(g, h)
    assert len(s) == 3
    assert s == frozenset(idx.encode(u, 0) for u in (0, 1, 2))
    assert solver.validate(product, K.DOUBLE, s)
    assert solver.exact_invariant(product, K.DOUBLE) == 3


def test_two_universal_witness(constructions):
    s = constructions.two_universal_witness(fam("path:4"), fam("complete:3"))
    assert len(s) == 4
    with pytest.raises(PremiseError):
        constructions.two_universal_witness(fam("path:4"), fam("path:3"))


def test_two_universal_witness_k2(constructions):
    assert len(constructions.two_universal_witness(fam("complete:2"), fam("complete:2"))) == 2


def test_universal_lift_witness(constructions, solver):
    g, h = fam("path:3"), fam("path:3")
    f = constructions.universal_lift_witness(g, h)
    assert isinstance(f, WeightFn)
    assert f.weight == 3
    product, _ = product_service.lex_product(g, h)
    assert solver.exact_invariant(product, K.DOUBLE) == 3


def test_hk_witness(constructions, solver):
    assert constructions.hk_witness(4, [3, 2, 3, 2]) == frozenset({0, 1, 2, 3})
    assert solver.exact_invariant(fam("hk:4:3,2,3,2"), K.DOUBLE_TOTAL) == 4
    assert constructions.hk_witness(3, [1, 1, 1]) == frozenset({0, 1, 2})
    assert len(constructions.hk_witness(5, [2, 2, 2, 2, 2])) == 5
    with pytest.raises(GraphValidationError):
        constructions.hk_witness(2, [1, 1])
