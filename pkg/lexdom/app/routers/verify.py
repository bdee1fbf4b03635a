from typing import Optional, Tuple

import click

from app.core.config import settings
from app.middleware.logging import LoggingMiddleware
from app.models.graph import FamilyKind
from app.models.report import CheckId, CorpusSource, CorpusSpec, Verdict
from app.services.report_service import FORMATS, emit_report, write_report
from app.services.verify_service import VerifyService, default_corpus

CORPUS_NAMES = {
    "default": CorpusSource.DEFAULT,
    "enumerate": CorpusSource.ENUMERATE,
    "family-grid": CorpusSource.FAMILY_GRID,
    "empty": CorpusSource.EMPTY,
}


def corpus_from_option(name: str, cap: Optional[int], no_grid: bool) -> CorpusSpec:
    """``default``, ``enumerate``, ``family-grid``, ``empty`` or a path to a graph6 file"""
    base = default_corpus()
    update = {"include_grid": not no_grid}
    if cap is not None:
        update["product_cap"] = cap
    if name in CORPUS_NAMES:
        update["source"] = CORPUS_NAMES[name]
    else:
        update.update(source=CorpusSource.GRAPH6_FILE, path=name)
    try:
        return CorpusSpec(**{**base.model_dump(), **update})
    except ValueError as e:
        raise click.BadParameter(str(e)) from None


@click.command("verify", cls=LoggingMiddleware)
@click.option("--check", "checks", multiple=True, help="Check id such as V6; repeatable; default all")
@click.option("--corpus", default="default", show_default=True, help="default | enumerate | family-grid | empty | FILE.g6")
@click.option("--cap", type=int, help="Largest product order tested")
@click.option("--no-grid", is_flag=True, help="Skip the family grid")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="json", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), help="Write the report to a file")
@click.option("--case-table", is_flag=True, help="Append the P_n∘H / C_n∘H case tables (markdown)")
@click.pass_context
def verify(ctx: click.Context, checks: Tuple[str, ...], corpus: str, cap: Optional[int], no_grid: bool,
           fmt: str, output: Optional[str], case_table: bool):
    """Run theorem checks; exit 1 when a counterexample is found"""
    try:
        selected = [CheckId.parse(c) for c in checks]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--check") from None
    spec = corpus_from_option(corpus, cap, no_grid)
    service = VerifyService()
    if selected:
        reports = [service.run_check(check, spec) for check in selected]
    else:
        reports = service.run_all(spec)

    tables = None
    if case_table:
        columns = service.default_case_columns()
        n_range = range(settings.FAMILY_N_MIN, settings.FAMILY_N_MAX + 1)
        tables = {
            "P_n∘H": service.case_table(FamilyKind.PATH, columns, n_range),
            "C_n∘H": service.case_table(FamilyKind.CYCLE, columns, n_range),
        }

    text = emit_report(reports, fmt, tables)
    if output:
        write_report(text, output)
    else:
        click.echo(text)
    if any(r.verdict == Verdict.FAIL for r in reports):
        ctx.exit(1)
