"""Shared fixtures, helpers, and the acceptance-line reporter."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from minglish.aligner import ParallelPair
from minglish.tokenizer import ScriptKind, tokenize

settings.register_profile(
    "suite", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "minglish" / "data"
DESK_DIR = DATA_DIR / "desk"

# Lines appended by the acceptance tests, echoed after the run summary.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


def make_pair(pair_id: str, english: str, marathi: str) -> ParallelPair:
    return ParallelPair(
        id=pair_id,
        english=tokenize(english, ScriptKind.LATIN),
        marathi=tokenize(marathi, ScriptKind.DEVANAGARI),
    )


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def desk_dir() -> Path:
    return DESK_DIR
