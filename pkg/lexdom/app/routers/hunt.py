from typing import Optional

import click

from app.middleware.logging import LoggingMiddleware
from app.services.verify_service import VerifyService, default_corpus
from app.utils.helpers import to_json


@click.command("hunt", cls=LoggingMiddleware)
@click.option("--n-max", type=int, help="Largest graph order scanned")
def hunt(n_max: Optional[int]):
    """Graphs with γ×2 = γt{R2}, annotated with a lexicographic factorization when one exists"""
    corpus = None
    if n_max is not None:
        corpus = default_corpus().model_copy(update={"single_n_max": n_max})
    hits = VerifyService().hunt_equality(corpus)
    click.echo(to_json([hit.model_dump() for hit in hits]))
