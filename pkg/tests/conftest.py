from __future__ import annotations

import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

GOLDEN_PATCH_TTL = (FIXTURES / "insert_oregon_language.ttl").read_text()
GOLDEN_PATCH_TYPED_TTL = (FIXTURES / "insert_oregon_language_typed.ttl").read_text()
QUIZ_GRAPH_TTL = (FIXTURES / "quiz_languages.ttl").read_text()

DBP = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
REPO = "http://example.org/repo/"


@pytest.fixture
def golden_patch_ttl() -> str:
    return GOLDEN_PATCH_TTL


@pytest.fixture
def golden_patch_typed_ttl() -> str:
    return GOLDEN_PATCH_TYPED_TTL


@pytest.fixture
def quiz_graph_ttl() -> str:
    return QUIZ_GRAPH_TTL


def pytest_runtest_logreport(report):
    # One visible verdict line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {name}: {report.outcome.upper()}")
