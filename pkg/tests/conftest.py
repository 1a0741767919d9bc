from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from anxarc.slicer import load_verb_tables

import util


@pytest.fixture(scope="session")
def lexicon():
    return util.make_lexicon()


@pytest.fixture(scope="session")
def tables():
    return load_verb_tables()


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return Path(__file__).parent / "fixtures"
