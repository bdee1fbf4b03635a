import networkx as nx
import pytest

from app.models.graph import FamilyKind, FamilySpec, make_graph
from app.services.graph_service import PREDICATES, graph_service
from app.utils.validators import CapExceededError, GraphValidationError
from tests.conftest import fam


def test_build_graph_basic():
    k2 = graph_service.build_graph(2, [(0, 1)])
    assert k2.n == 2 and k2.edges() == [(0, 1)]

    n3 = graph_service.build_graph(3, [])
    assert n3.size == 0 and graph_service.has_isolated_vertex(n3)

    p4 = graph_service.build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert p4.size == 3 and graph_service.is_tree(p4)


def test_build_graph_rejects_bad_edges():
    with pytest.raises(GraphValidationError):
        graph_service.build_graph(3, [(0, 3)])
    with pytest.raises(GraphValidationError):
        graph_service.build_graph(3, [(1, 1)])


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(GraphValidationError):
        make_graph(2, (0b10, 0))


def test_graph_cap():
    with pytest.raises(GraphValidationError):
        make_graph(65, tuple([0] * 65))


@pytest.mark.parametrize("text,order,size", [
    ("path:5", 5, 4),
    ("cycle:6", 6, 6),
    ("complete:4", 4, 6),
    ("empty:3", 3, 0),
    ("star:4", 5, 4),
    ("star:1,4", 5, 4),
    ("dstar:2,3", 7, 6),
    ("cbip:2,3", 5, 6),
    ("hk:4:3,2,3,2", 14, 24),
])
def test_family_orders(text, order, size):
    g = fam(text)
    assert g.n == order
    assert g.size == size


def test_family_hk_structure():
    g = fam("hk:4:3,2,3,2")
    assert graph_service.min_degree(g) >= 2
    for v in range(4, g.n):
        assert g.degree(v) == 2
    # block 0 hangs on cycle vertices 0 and 1
    assert g.neighbors(4) == frozenset({0, 1})


def test_family_spec_errors():
    with pytest.raises(GraphValidationError):
        FamilySpec.parse("cycle:2")
    with pytest.raises(GraphValidationError):
        FamilySpec.parse("hk:3:1,1")
    with pytest.raises(GraphValidationError):
        FamilySpec.parse("wheel:5")
    with pytest.raises(GraphValidationError):
        FamilySpec.parse("path:x")
    with pytest.raises(GraphValidationError):
        FamilySpec.create(FamilyKind.COMPLETE, (65,))


def test_family_spec_label_round_trip():
    spec = FamilySpec.parse("family:dstar:2,3")
    assert spec.kind == FamilyKind.DOUBLE_STAR
    assert FamilySpec.parse(spec.label) == spec


def test_rooted_product():
    p5, p3 = fam("path:5"), fam("path:3")
    g = graph_service.rooted_product(p5, p3, graph_service.leaf(p3))
    assert g.n == 15
    assert g.size == 5 * 2 + 4

    k2 = fam("complete:2")
    bridged = graph_service.rooted_product(k2, k2, 0)
    assert nx.is_isomorphic(bridged.to_networkx(), nx.path_graph(4))


@pytest.mark.parametrize("n,predicate,count", [
    (2, None, 2),
    (3, None, 8),
    (4, "no_isolated", 41),
    (4, "connected", 38),
])
def test_enumerate_labeled_graphs(n, predicate, count):
    check = PREDICATES[predicate] if predicate else None
    assert sum(1 for _ in graph_service.enumerate_labeled_graphs(n, check)) == count


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        list(graph_service.enumerate_labeled_graphs(7))


def test_structural_queries():
    assert graph_service.universal_vertices(fam("complete:3")) == frozenset({0, 1, 2})
    assert graph_service.universal_vertices(fam("star:4")) == frozenset({0})
    assert graph_service.min_degree(fam("cycle:5")) == 2
    assert graph_service.is_connected(fam("path:4"))
    assert not graph_service.is_connected(fam("empty:2"))
    assert not graph_service.is_tree(fam("cycle:4"))


def test_remove_edge():
    c4 = fam("cycle:4")
    p4 = graph_service.remove_edge(c4, 0, 3)
    assert graph_service.is_tree(p4)
    with pytest.raises(GraphValidationError):
        graph_service.remove_edge(p4, 0, 3)


def test_is_k2_union():
    c4 = fam("cycle:4")
    assert graph_service.is_k2_union(c4, frozenset({0, 1}))
    assert not graph_service.is_k2_union(c4, frozenset({0, 1, 2}))
