from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "schema" / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def vocab_file(tmp_path):
    p = tmp_path / "vocab.txt"
    p.write_text("alpha\nbeta\ngamma\n", encoding="utf-8")
    return p
