from typing import Optional

import click

from app.middleware.logging import LoggingMiddleware
from app.models.graph import FamilyKind, FamilySpec
from app.models.invariants import InvariantKind, WeightFn
from app.schemas.results import ConstructionResponse
from app.services.construction_service import SMALL_VALUE_CASES, SchemeRow, construction_service
from app.services.formula_service import formula_service, gamma_x2_path_cycle_gamma2
from app.services.graph_service import graph_service
from app.services.product_service import PairIndex, product_service
from app.utils.helpers import resolve_graph, to_json

SCHEMES = ["path-g2", "small-value", "two-universal", "universal-lift", "hk"]


def _int_list(text: Optional[str]):
    if not text:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _need(value, option: str, scheme: str):
    if value is None:
        raise click.UsageError(f"--scheme {scheme} needs {option}")
    return value


@click.command("construct", cls=LoggingMiddleware)
@click.option("--scheme", type=click.Choice(SCHEMES), required=True)
@click.option("--n", type=int, help="Path order for path-g2")
@click.option("--g", "g_text", help="First factor (graph6 or family spec)")
@click.option("--h", "h_text", help="Second factor (graph6 or family spec)")
@click.option("--case", type=click.Choice(SMALL_VALUE_CASES), help="Value-3 case for small-value")
@click.option("--dom-pair", help="Dominating pair of H for path-g2, e.g. 0,2")
@click.option("--single", type=int, help="Vertex of H placed in single-vertex copies")
@click.option("--k", type=int, help="Cycle length for hk")
@click.option("--sizes", help="Block sizes for hk, e.g. 3,2,3,2")
def construct(scheme, n, g_text, h_text, case, dom_pair, single, k, sizes):
    """Build and validate an explicit minimum witness"""
    if scheme == "hk":
        k = _need(k, "--k", scheme)
        block_sizes = _need(_int_list(sizes), "--sizes", scheme)
        s = construction_service.hk_witness(k, block_sizes)
        response = ConstructionResponse(
            scheme=FamilySpec.create(FamilyKind.FAMILY_HK, (k,), block_sizes).label,
            witness=[],
            labels=sorted(s),
            cardinality=len(s),
            expected=k,
            valid=True,
        )
        click.echo(to_json(response.model_dump(exclude_none=True)))
        return

    h = resolve_graph(_need(h_text, "--h", scheme))
    if scheme == "path-g2":
        n = _need(n, "--n", scheme)
        g = graph_service.family(FamilySpec.create(FamilyKind.PATH, (n,)))
        s = construction_service.path_scheme_gamma2(n, h, _int_list(dom_pair), single)
        expected = gamma_x2_path_cycle_gamma2(n)
        label = f"path-g2:P{n} row {list(SchemeRow.for_path(n).counts)}"
    else:
        g = resolve_graph(_need(g_text, "--g", scheme))
        if scheme == "small-value":
            s = construction_service.small_value_witness(g, h, _need(case, "--case", scheme))
            expected = 3
            label = f"small-value:{case}"
        elif scheme == "two-universal":
            s = construction_service.two_universal_witness(g, h)
            expected = 2 * formula_service.invariant(g, InvariantKind.DOM)
            label = scheme
        else:
            s = construction_service.universal_lift_witness(g, h)
            expected = formula_service.invariant(g, InvariantKind.TOTAL_ROMAN_2)
            label = scheme

    idx = PairIndex(nG=g.n, nH=h.n)
    if isinstance(s, WeightFn):
        function = s.nonzero()
        response = ConstructionResponse(
            scheme=label,
            witness=product_service.set_to_pairs(function, idx),
            labels=sorted(function),
            cardinality=s.weight,
            expected=expected,
            valid=True,
            function=function,
        )
    else:
        response = ConstructionResponse(
            scheme=label,
            witness=product_service.set_to_pairs(s, idx),
            labels=sorted(s),
            cardinality=len(s),
            expected=expected,
            valid=True,
            profile=list(product_service.projection_profile(s, idx).counts),
        )
    click.echo(to_json(response.model_dump(exclude_none=True)))
