import pytest

from app.core.config import Settings, apply_settings, settings
from app.models.graph import FamilySpec, Graph
from app.models.report import CorpusSource, CorpusSpec
from app.services.formula_service import FormulaService
from app.services.graph_service import graph_service
from app.services.solver_service import SolverService
from app.utils.invariant_cache import InvariantCache


def fam(text: str) -> Graph:
    return graph_service.family(FamilySpec.parse(text))


@pytest.fixture(autouse=True)
def restore_settings():
    snapshot = settings.model_dump()
    yield
    apply_settings(Settings.model_construct(**snapshot))


@pytest.fixture
def solver():
    return SolverService()


@pytest.fixture
def formulas(solver):
    return FormulaService(solver=solver, cache=InvariantCache())


@pytest.fixture
def small_corpus():
    return CorpusSpec(
        source=CorpusSource.ENUMERATE,
        g_n_max=3,
        h_n_max=2,
        single_n_max=4,
        include_grid=False,
    )


@pytest.fixture
def empty_corpus():
    return CorpusSpec(source=CorpusSource.EMPTY, include_grid=False)
