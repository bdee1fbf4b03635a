import click

from app.middleware.logging import LoggingMiddleware
from app.schemas.results import ProductResponse
from app.services.product_service import product_service
from app.utils.graph6 import write_graph6
from app.utils.helpers import resolve_graph, to_json


@click.command("product", cls=LoggingMiddleware)
@click.option("--g", "g_text", required=True, help="First factor (graph6 or family spec)")
@click.option("--h", "h_text", required=True, help="Second factor (graph6 or family spec)")
@click.option("--emit", type=click.Choice(["graph6", "json"]), default="graph6", show_default=True)
def product(g_text: str, h_text: str, emit: str):
    """Lexicographic product G∘H"""
    g, h = resolve_graph(g_text), resolve_graph(h_text)
    product_graph, idx = product_service.lex_product(g, h)
    response = ProductResponse(
        graph6=write_graph6(product_graph),
        order=idx.order,
        pair_index={"nG": idx.nG, "nH": idx.nH},
    )
    if emit == "graph6":
        click.echo(response.graph6)
        click.echo(to_json(response.model_dump(exclude={"graph6"})))
    else:
        click.echo(to_json(response.model_dump()))
