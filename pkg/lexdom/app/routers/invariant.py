import click

from app.middleware.logging import LoggingMiddleware
from app.models.invariants import InvariantKind, WeightFn
from app.schemas.results import InvariantResponse
from app.services.solver_service import solver_service
from app.utils.helpers import graph_key, resolve_graph, to_json

KIND_CHOICES = [kind.value for kind in InvariantKind]


@click.command("invariant", cls=LoggingMiddleware)
@click.option("--graph", "graph_text", required=True, help="graph6 line or family spec such as path:7")
@click.option("--kind", type=click.Choice(KIND_CHOICES), required=True)
@click.option("--witness", is_flag=True, help="Include one minimum witness")
@click.option("--all-min", is_flag=True, help="Count every minimum witness")
def invariant(graph_text: str, kind: str, witness: bool, all_min: bool):
    """Exact invariant value of a graph"""
    graph = resolve_graph(graph_text)
    kind = InvariantKind(kind)
    best = solver_service.min_witness(graph, kind)
    response = InvariantResponse(
        graph=graph_key(graph),
        kind=kind.value,
        value=best.weight if isinstance(best, WeightFn) else len(best),
    )
    if witness:
        if isinstance(best, WeightFn):
            response.function = best.nonzero()
        else:
            response.witness = sorted(best)
    if all_min:
        response.count = sum(1 for _ in solver_service.enumerate_minimum_sets(graph, kind))
    click.echo(to_json(response.model_dump(exclude_none=True)))
