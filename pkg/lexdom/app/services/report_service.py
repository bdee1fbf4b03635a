import csv
import io
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from tabulate import tabulate

from app.models.report import CheckReport
from app.utils.helpers import JSONEncoder
from app.utils.validators import LexdomError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "markdown")

CSV_FIELDS = ["check", "title", "verdict", "tested", "skipped", "counterexamples", "warnings", "wall_time"]


def _summary_row(report: CheckReport) -> Dict:
    return {
        "check": report.check.value,
        "title": report.title,
        "verdict": report.verdict.value,
        "tested": report.tested,
        "skipped": report.skipped,
        "counterexamples": len(report.counterexamples),
        "warnings": "; ".join(report.warnings),
        "wall_time": f"{report.wall_time:.2f}",
    }


def _markdown(reports: Sequence[CheckReport], case_tables: Optional[Dict[str, List]] = None) -> str:
    rows = [_summary_row(r) for r in reports]
    parts = ["# Verification report", "", tabulate(rows, headers="keys", tablefmt="github")]

    for report in reports:
        if not report.counterexamples and not report.skip_reasons:
            continue
        parts += ["", f"## {report.check.value}: {report.title}"]
        if report.skip_reasons:
            skipped = [{"reason": k, "count": v} for k, v in report.skip_reasons.items()]
            parts += ["", tabulate(skipped, headers="keys", tablefmt="github")]
        if report.counterexamples:
            cx = [c.model_dump() for c in report.counterexamples]
            parts += ["", tabulate(cx, headers="keys", tablefmt="github")]

    for name, cells in (case_tables or {}).items():
        parts += ["", f"## Case table: {name}", "", _case_table(cells)]
    return "\n".join(parts) + "\n"


def _case_table(cells) -> str:
    columns = list(dict.fromkeys(c.column for c in cells))
    by_n: Dict[int, Dict[str, str]] = {}
    for cell in cells:
        row = by_n.setdefault(cell.n, {"n": cell.n})
        formula = "-" if cell.formula is None else str(cell.formula)
        oracle = "-" if cell.oracle is None else str(cell.oracle)
        mark = "" if cell.match is None else (" ok" if cell.match else " MISMATCH")
        row[cell.column] = f"{formula} / {oracle}{mark}"
    return tabulate([by_n[n] for n in sorted(by_n)], headers={"n": "n", **{c: c for c in columns}}, tablefmt="github")


def emit_report(reports: Sequence[CheckReport], fmt: str = "json", case_tables: Optional[Dict[str, List]] = None) -> str:
    """Render check reports as json, csv or markdown"""
    fmt = fmt.lower()
    if fmt == "json":
        return json.dumps([r.model_dump(mode="json") for r in reports], cls=JSONEncoder, indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for report in reports:
            writer.writerow(_summary_row(report))
        return buffer.getvalue()
    if fmt == "markdown":
        return _markdown(reports, case_tables)
    raise LexdomError(f"unknown report format {fmt!r}; expected one of {', '.join(FORMATS)}")


def write_report(text: str, path: str) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as e:
        logger.error(f"Error writing report to {target}: {e}")
        raise LexdomError(f"cannot write report to {target}: {e}") from e
    logger.info(f"Report written to {target}")
    return target
