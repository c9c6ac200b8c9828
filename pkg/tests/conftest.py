import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sampledata import SAMPLE_FILES  # noqa: E402


@pytest.fixture(scope="session")
def sample_texts():
    return {name: path.read_text() for name, path in SAMPLE_FILES.items()}


@pytest.fixture(scope="session")
def sample_docs(sample_texts):
    from labyrinth import parse

    return {name: parse(text) for name, text in sample_texts.items()}
