import logging
import time
from typing import Any

import click

from app.utils.validators import LexdomError

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(level: str = "WARNING") -> None:
    """Configure root logging for a CLI run, replacing earlier handlers"""
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format=LOG_FORMAT, force=True)


class LoggingMiddleware(click.Command):
    """Click command that logs each invocation with its exit code and duration.

    Toolkit errors surface as usage errors (exit 2).
    """

    def invoke(self, ctx: click.Context) -> Any:
        start_time = time.time()

        # Log command
        logger.info(f"Command: {self.name} {ctx.params}")

        exit_code = 0
        try:
            try:
                return super().invoke(ctx)
            except LexdomError as exc:
                logger.error(f"{self.name} failed: {exc}")
                raise click.UsageError(str(exc), ctx) from exc
        except click.exceptions.Exit as exc:
            exit_code = exc.exit_code
            raise
        except click.ClickException as exc:
            exit_code = exc.exit_code
            raise
        finally:
            process_time = time.time() - start_time
            logger.info(
                f"Completed: {self.name} | "
                f"exit={exit_code} | "
                f"Time: {process_time:.4f}s"
            )
