import pytest
from pathlib import Path

from quivrad import ar_quiver, parse_presentation

DATA = Path(__file__).parent / "data"

_PIPELINES = {}


def fixture_text(name: str) -> str:
    return (DATA / f"{name}.quiver").read_text()


def fixture_path(name: str) -> str:
    return str(DATA / f"{name}.quiver")


def load(name: str):
    return parse_presentation(fixture_text(name))


def pipeline(name: str):
    """(presentation, AR quiver, completed filtration), computed once per session."""
    if name not in _PIPELINES:
        pres = load(name)
        ar = ar_quiver(pres)
        ar.filtration.ensure_complete()
        _PIPELINES[name] = (pres, ar, ar.filtration)
    return _PIPELINES[name]


@pytest.fixture(scope="session")
def s2_pipeline():
    return pipeline("s2_cyclic")


@pytest.fixture(scope="session")
def ex25_pipeline():
    return pipeline("ex_2_5")


@pytest.fixture(scope="session")
def s3_pipeline():
    return pipeline("s3_cycle")


@pytest.fixture(scope="session")
def ex45_pipeline():
    return pipeline("ex_4_5")


@pytest.fixture(scope="session")
def final_pipeline():
    return pipeline("s4_final")


@pytest.fixture(scope="session")
def a2_pipeline():
    return pipeline("a2")


@pytest.fixture(scope="session")
def a3_pipeline():
    return pipeline("a3")


@pytest.fixture(scope="session")
def a3_rel_pipeline():
    return pipeline("a3_rel")
