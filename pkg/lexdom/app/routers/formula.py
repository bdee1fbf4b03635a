import click

from app.middleware.logging import LoggingMiddleware
from app.models.graph import FamilySpec
from app.services.formula_service import formula_service
from app.utils.helpers import is_family_text, resolve_graph, to_json

TARGETS = ["gx2", "g", "gt", "small-value", "equivalence"]


@click.command("formula", cls=LoggingMiddleware)
@click.option("--g", "g_text", required=True, help="First factor; a family spec for --target gx2")
@click.option("--h", "h_text", required=True, help="Second factor (graph6 or family spec)")
@click.option("--target", type=click.Choice(TARGETS), default="gx2", show_default=True)
def formula(g_text: str, h_text: str, target: str):
    """Closed formula for an invariant of G∘H, premises checked"""
    h = resolve_graph(h_text)
    if target == "gx2":
        if not is_family_text(g_text):
            raise click.UsageError("--target gx2 needs a family spec for --g, e.g. path:7")
        result = formula_service.gamma_x2_lex_formula(FamilySpec.parse(g_text), h)
    else:
        g = resolve_graph(g_text)
        if target == "g":
            result = formula_service.gamma_lex(g, h)
        elif target == "gt":
            result = formula_service.gamma_t_lex(g, h)
        elif target == "small-value":
            result = formula_service.classify_small_value(g, h)
        else:
            result = formula_service.check_2gamma_t_equivalence(g, h)
    click.echo(to_json(result.model_dump(mode="json", exclude_none=True)))


@click.command("bounds", cls=LoggingMiddleware)
@click.option("--g", "g_text", required=True)
@click.option("--h", "h_text", required=True)
def bounds(g_text: str, h_text: str):
    """Interval for γ×2(G∘H) and the result each end comes from"""
    result = formula_service.gamma_x2_lex_bounds(resolve_graph(g_text), resolve_graph(h_text))
    click.echo(to_json(result.model_dump(mode="json", exclude_none=True)))
