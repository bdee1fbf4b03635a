from typing import Optional

import click

from app.core.config import apply_settings, load_settings, settings
from app.middleware.logging import configure_logging
from app.routers.construct import construct
from app.routers.formula import bounds, formula
from app.routers.hunt import hunt
from app.routers.invariant import invariant
from app.routers.product import product
from app.routers.verify import verify


@click.group(name=settings.APP_NAME)
@click.version_option(settings.VERSION)
@click.option("--config", type=click.Path(dir_okay=False), help="key=value file with LEXDOM_* overrides")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.option("--workers", type=int, help="Parallel workers for verification sweeps")
def cli(config: Optional[str], log_level: Optional[str], workers: Optional[int]):
    """Double domination and total Roman {2}-domination in lexicographic products"""
    if config:
        try:
            apply_settings(load_settings(config))
        except FileNotFoundError as e:
            raise click.UsageError(str(e)) from None
    if workers is not None:
        if workers == 0:
            raise click.BadParameter("worker count cannot be 0", param_hint="--workers")
        settings.WORKERS = workers
    configure_logging(log_level or settings.LOG_LEVEL)


# Include routers
cli.add_command(invariant)
cli.add_command(product)
cli.add_command(formula)
cli.add_command(bounds)
cli.add_command(construct)
cli.add_command(verify)
cli.add_command(hunt)


if __name__ == "__main__":
    cli()
