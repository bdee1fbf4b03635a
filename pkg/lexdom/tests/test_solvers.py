from itertools import combinations, product

import networkx as nx
import pytest
from pydantic import ValidationError

from app.models.graph import make_graph
from app.models.invariants import InvariantKind, WeightFn
from app.services.graph_service import graph_service
from app.services.solver_service import witness_order
from app.utils.validators import InfeasibleError
from tests.conftest import fam

K = InvariantKind


@pytest.mark.parametrize("text,kind,value", [
    ("path:6", K.DOUBLE, 5),
    ("cycle:7", K.DOUBLE, 5),
    ("cycle:6", K.DOUBLE, 4),
    ("star:4", K.DOUBLE, 5),
    ("star:4", K.TOTAL_ROMAN_2, 3),
    ("star:3", K.TWO_PACKING, 1),
    ("path:4", K.TOTAL, 2),
    ("path:4", K.TWO_PACKING, 2),
    ("path:4", K.TOTAL_ROMAN, 4),
    ("path:4", K.TOTAL_ROMAN_2, 4),
    ("complete:3", K.DOUBLE_TOTAL, 3),
    ("complete:3", K.TOTAL_ROMAN, 3),
    ("complete:3", K.TOTAL_ROMAN_2, 2),
    ("cycle:4", K.DOUBLE_TOTAL, 4),
    ("cycle:4", K.TOTAL_ROMAN_2, 3),
    ("complete:2", K.TOTAL_ROMAN_2, 2),
    ("empty:1", K.DOM, 1),
    ("empty:1", K.TWO_PACKING, 1),
])
def test_exact_values(solver, text, kind, value):
    assert solver.exact_invariant(fam(text), kind) == value


@pytest.mark.parametrize("kind", [K.TOTAL, K.DOUBLE, K.DOUBLE_TOTAL, K.TOTAL_ROMAN, K.TOTAL_ROMAN_2])
def test_single_vertex_total_kinds_infeasible(solver, kind):
    with pytest.raises(InfeasibleError, match="INFEASIBLE"):
        solver.exact_invariant(fam("empty:1"), kind)


def test_double_total_needs_min_degree_two(solver):
    assert not solver.is_feasible(fam("path:3"), K.DOUBLE_TOTAL)
    assert solver.invariant_or_none(fam("path:3"), K.DOUBLE_TOTAL) is None


def test_validate(solver):
    assert solver.validate(fam("path:3"), K.DOUBLE, frozenset({0, 1, 2}))
    f = WeightFn.from_mapping(4, {0: 2, 1: 1})
    assert solver.validate(fam("star:3"), K.TOTAL_ROMAN_2, f)
    assert f.weight == 3
    assert not solver.validate(fam("cycle:4"), K.TWO_PACKING, frozenset({0, 2}))
    assert not solver.validate(fam("path:3"), K.DOM, frozenset({5}))
    # a set is never a valid function witness
    assert not solver.validate(fam("star:3"), K.TOTAL_ROMAN_2, frozenset({0, 1}))


def test_weight_fn_values():
    with pytest.raises(ValidationError):
        WeightFn(values=(0, 3))
    f = WeightFn(values=(2, 1, 0, 1))
    assert f.v2 == frozenset({0})
    assert f.v1 == frozenset({1, 3})
    assert f.v0 == frozenset({2})
    assert f.positive_mask() == 0b1011


def test_min_witness(solver):
    assert solver.min_witness(fam("complete:3"), K.DOM) == frozenset({0})
    assert solver.min_witness(fam("path:4"), K.TOTAL) == frozenset({1, 2})
    witness = solver.min_witness(fam("cycle:6"), K.DOUBLE)
    assert len(witness) == 4
    assert solver.validate(fam("cycle:6"), K.DOUBLE, witness)


SET_KINDS = [K.DOM, K.TOTAL, K.DOUBLE, K.DOUBLE_TOTAL]


def _first_valid_subset(solver, g, kind, size):
    for c in combinations(range(g.n), size):
        if solver.validate(g, kind, frozenset(c)):
            return frozenset(c)
    return None


@pytest.mark.parametrize("adj,kind,expected", [
    ((24, 24, 8, 7, 3), K.DOM, {0, 3}),
    ((24, 20, 10, 5, 3), K.TOTAL, {0, 1, 4}),
])
def test_min_witness_is_lexicographically_smallest(solver, adj, kind, expected):
    assert solver.min_witness(make_graph(5, adj), kind) == frozenset(expected)


@pytest.mark.parametrize("n", [4, 5])
def test_min_witness_matches_ordered_subset_scan(solver, n):
    for g in graph_service.enumerate_labeled_graphs(n):
        for kind in SET_KINDS:
            if not solver.is_feasible(g, kind):
                continue
            witness = solver.min_witness(g, kind)
            assert witness == _first_valid_subset(solver, g, kind, len(witness)), (g, kind)


def test_function_witness_matches_ordered_scan(solver):
    for g in graph_service.enumerate_labeled_graphs(4):
        for kind in (K.TOTAL_ROMAN, K.TOTAL_ROMAN_2):
            if not solver.is_feasible(g, kind):
                continue
            witness = solver.min_witness(g, kind)
            valid = [
                WeightFn(values=values) for values in product((0, 1, 2), repeat=g.n)
                if sum(values) == witness.weight and solver.validate(g, kind, WeightFn(values=values))
            ]
            assert witness == min(valid, key=witness_order), (g, kind)

def test_enumerate_minimum_sets(solver):
    assert list(solver.enumerate_minimum_sets(fam("path:4"), K.TOTAL)) == [frozenset({1, 2})]
    assert list(solver.enumerate_minimum_sets(fam("complete:2"), K.DOUBLE)) == [frozenset({0, 1})]
    c3_sets = set(solver.enumerate_minimum_sets(fam("cycle:3"), K.TOTAL))
    assert c3_sets == {frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})}


def test_enumeration_count_matches_subset_scan(solver):
    c6 = fam("cycle:6")
    found = set(solver.enumerate_minimum_sets(c6, K.DOUBLE))
    scan = {
        frozenset(c) for c in combinations(range(6), 4)
        if solver.validate(c6, K.DOUBLE, frozenset(c))
    }
    assert found == scan


def test_function_enumeration_is_minimum(solver):
    p4 = fam("path:4")
    functions = list(solver.enumerate_minimum_sets(p4, K.TOTAL_ROMAN_2))
    assert functions
    assert len(set(functions)) == len(functions)
    for f in functions:
        assert f.weight == 4
        assert solver.validate(p4, K.TOTAL_ROMAN_2, f)


def test_packing_enumeration(solver):
    sets = list(solver.enumerate_minimum_sets(fam("path:6"), K.TWO_PACKING))
    assert sets
    assert all(len(s) == 2 for s in sets)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pruned_search_matches_naive_scan(solver, n):
    for g in graph_service.enumerate_labeled_graphs(n):
        for kind in InvariantKind:
            if not solver.is_feasible(g, kind):
                continue
            assert solver.exact_invariant(g, kind) == solver.naive_invariant(g, kind), (g, kind)



@pytest.mark.parametrize("n", [6, 7, 8])
def test_pruned_search_matches_naive_scan_random(solver, n):
    for seed in range(6):
        nxg = nx.gnp_random_graph(n, 0.45, seed=100 * n + seed)
        g = graph_service.build_graph(n, nxg.edges())
        for kind in InvariantKind:
            if solver.is_feasible(g, kind):
                assert solver.exact_invariant(g, kind) == solver.naive_invariant(g, kind), (seed, kind)

@pytest.mark.slow
def test_pruned_search_matches_naive_scan_order_five(solver):
    for g in graph_service.enumerate_labeled_graphs(5):
        for kind in InvariantKind:
            if solver.is_feasible(g, kind):
                assert solver.exact_invariant(g, kind) == solver.naive_invariant(g, kind), (g, kind)


def test_domination_witness_against_networkx(solver):
    for g in graph_service.enumerate_labeled_graphs(4):
        witness = solver.min_witness(g, K.DOM)
        assert nx.is_dominating_set(g.to_networkx(), witness)


def test_greedy_bound_is_upper_bound(solver):
    for text in ["path:7", "cycle:8", "dstar:2,3", "hk:3:1,1,1"]:
        g = fam(text)
        for kind in (K.DOM, K.TOTAL, K.DOUBLE):
            assert solver.greedy_upper_bound(g, kind) >= solver.exact_invariant(g, kind)
