from pathlib import Path

import pytest

from frank.index import build_index, read_corpus_jsonl
from frank.ranker import default_template

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def index5():
    return build_index(read_corpus_jsonl(DATA / "corpus5.jsonl"))


@pytest.fixture(scope="session")
def index20():
    return build_index(read_corpus_jsonl(DATA / "corpus20.jsonl"))


@pytest.fixture(scope="session")
def template():
    return default_template()
