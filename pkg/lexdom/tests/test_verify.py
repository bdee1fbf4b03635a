import csv
import io
import json

import pytest

from app.models.graph import FamilyKind
from app.models.invariants import InvariantKind
from app.models.report import CheckId, CheckReport, Counterexample, CorpusSource, CorpusSpec, Verdict
from app.services.report_service import emit_report, write_report
from app.services.solver_service import SolverService
from app.services.verify_service import SKIPPED_ALL, VerifyService
from app.utils.graph6 import write_graph6
from app.utils.validators import LexdomError
from tests.conftest import fam


class CorruptedSolver(SolverService):
    """Reports γt{R2} one too high on every graph with an edge"""

    def invariant_or_none(self, graph, kind):
        value = super().invariant_or_none(graph, kind)
        if kind == InvariantKind.TOTAL_ROMAN_2 and value is not None:
            return value + 1
        return value


@pytest.fixture
def verifier():
    return VerifyService(workers=1, show_progress=False)


@pytest.mark.parametrize("check", [CheckId.V1, CheckId.V3, CheckId.V4, CheckId.V5])
def test_single_graph_checks_pass(verifier, small_corpus, check):
    report = verifier.run_check(check, small_corpus)
    assert report.verdict == Verdict.PASS, report.counterexamples
    assert report.tested > 0
    assert report.generated == 1 + 2 + 8 + 64


@pytest.mark.parametrize("check", [
    CheckId.V2, CheckId.V6, CheckId.V7, CheckId.V8, CheckId.V10,
    CheckId.V11, CheckId.V12, CheckId.V13, CheckId.V15,
])
def test_pair_checks_pass(verifier, small_corpus, check):
    report = verifier.run_check(check, small_corpus)
    assert report.verdict == Verdict.PASS, report.counterexamples
    assert report.tested + report.skipped == report.generated
    assert sum(report.skip_reasons.values()) == report.skipped


def test_v9_and_v16_on_connected_pairs(verifier, small_corpus):
    for check in (CheckId.V9, CheckId.V16):
        report = verifier.run_check(check, small_corpus)
        assert report.verdict == Verdict.PASS, report.counterexamples


def test_empty_corpus_passes_with_warning(verifier, empty_corpus):
    reports = verifier.run_all(empty_corpus)
    assert len(reports) == 16
    for report in reports:
        assert report.verdict == Verdict.PASS
        assert report.tested == 0
        assert SKIPPED_ALL in report.warnings


def test_corrupted_oracle_is_caught(small_corpus):
    verifier = VerifyService(solver=CorruptedSolver(), workers=1, show_progress=False)
    report = verifier.run_check(CheckId.V6, small_corpus)
    assert report.verdict == Verdict.FAIL
    assert report.counterexamples
    cx = report.counterexamples[0]
    assert cx.h is not None
    assert "γt{R2}" in cx.observed


def test_missing_corpus_file_reported_as_failure(verifier):
    corpus = CorpusSpec(source=CorpusSource.GRAPH6_FILE, path="/nonexistent/corpus.g6")
    reports = verifier.run_all(corpus)
    assert len(reports) == 16
    assert all(r.verdict == Verdict.FAIL for r in reports)
    assert "cannot read" in reports[0].counterexamples[0].detail


def test_graph6_corpus(verifier, tmp_path):
    path = tmp_path / "corpus.g6"
    path.write_text("\n".join(write_graph6(fam(t)) for t in ["path:3", "cycle:4", "complete:2", "empty:2"]))
    corpus = CorpusSpec(source=CorpusSource.GRAPH6_FILE, path=str(path))
    singles, pairs = verifier.corpus(corpus)
    assert len(singles) == 4
    # every graph without isolated vertices as G, every nontrivial graph as H
    assert len(pairs) == 3 * 4
    assert verifier.run_check(CheckId.V7, corpus).verdict == Verdict.PASS


def test_corpus_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(source=CorpusSource.GRAPH6_FILE)
    with pytest.raises(ValueError):
        CorpusSpec(product_cap=65)


def test_check_report_verdict_consistency():
    with pytest.raises(ValueError):
        CheckReport(check=CheckId.V1, title="t", verdict=Verdict.FAIL)
    with pytest.raises(ValueError):
        CheckReport(
            check=CheckId.V1,
            title="t",
            counterexamples=[Counterexample(g="A_", observed="1", expected="2")],
        )


def test_check_id_parse():
    assert CheckId.parse(" v6 ") == CheckId.V6
    with pytest.raises(ValueError):
        CheckId.parse("V17")


def test_rooted_product_tightness(verifier):
    corpus = CorpusSpec(source=CorpusSource.FAMILY_GRID)
    report = verifier.run_check(CheckId.V9, corpus)
    assert report.verdict == Verdict.PASS
    assert report.tested == 1
    assert any("rooted" in note for note in report.notes)


def test_hunt_equality(verifier):
    corpus = CorpusSpec(source=CorpusSource.ENUMERATE, single_n_max=4, include_grid=False)
    hits = {hit.graph6: hit for hit in verifier.hunt_equality(corpus)}
    assert "A_" in hits
    assert hits["A_"].value == 2
    assert write_graph6(fam("star:3")) not in hits
    k4 = hits[write_graph6(fam("complete:4"))]
    assert k4.factorization is not None


def test_case_table(verifier):
    cells = verifier.case_table(FamilyKind.PATH, verifier.default_case_columns(), range(3, 5))
    assert len(cells) == 8
    checked = [c for c in cells if c.match is not None]
    assert checked
    assert all(c.match for c in checked)


def test_emit_report_formats(verifier, small_corpus, tmp_path):
    reports = [verifier.run_check(CheckId.V4, small_corpus)]

    data = json.loads(emit_report(reports, "json"))
    assert data[0]["check"] == "V4"
    assert data[0]["verdict"] == "pass"

    rows = list(csv.DictReader(io.StringIO(emit_report(reports, "csv"))))
    assert rows[0]["check"] == "V4"

    cells = verifier.case_table(FamilyKind.CYCLE, verifier.default_case_columns(), range(3, 5))
    text = emit_report(reports, "markdown", {"C_n∘H": cells})
    assert "| V4" in text
    assert "Case table: C_n∘H" in text

    with pytest.raises(LexdomError):
        emit_report(reports, "xml")

    target = write_report(text, str(tmp_path / "out" / "report.md"))
    assert target.read_text(encoding="utf-8") == text


@pytest.mark.slow
def test_parallel_sweep_matches_serial(small_corpus):
    serial = VerifyService(workers=1).run_check(CheckId.V6, small_corpus)
    parallel = VerifyService(workers=2).run_check(CheckId.V6, small_corpus)
    assert (serial.tested, serial.skipped) == (parallel.tested, parallel.skipped)
    assert parallel.verdict == Verdict.PASS


@pytest.mark.slow
def test_default_corpus_all_checks_pass():
    reports = VerifyService(workers=1).run_all()
    assert len(reports) == 16
    failing = [(r.check.value, r.counterexamples) for r in reports if r.verdict == Verdict.FAIL]
    assert not failing
