import json
from pathlib import Path

import pytest

from hadithcheck.corpus import load_corpus
from hadithcheck.match import build_index

REPO_ROOT = Path(__file__).resolve().parent.parent
SAMPLE_CORPUS = REPO_ROOT / "data" / "sample_corpus.jsonl"


@pytest.fixture(scope="session")
def sample_corpus_path() -> Path:
    return SAMPLE_CORPUS


@pytest.fixture(scope="session")
def corpus(sample_corpus_path):
    return load_corpus(sample_corpus_path)


@pytest.fixture(scope="session")
def index(corpus):
    return build_index(corpus)


@pytest.fixture
def write_corpus(tmp_path):
    """Write rows (dicts or raw strings) as one JSONL corpus file and return its path."""

    def _write(rows, name="corpus.jsonl"):
        path = tmp_path / name
        lines = []
        for row in rows:
            if isinstance(row, str):
                lines.append(row)
            else:
                lines.append(json.dumps(row, ensure_ascii=False))
        path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        return path

    return _write


def corpus_row(
    rec_id="bukhari-0001",
    book="bukhari",
    number=1,
    matn="انما الاعمال بالنيات",
    isnad="",
    grade="sahih",
):
    return {
        "id": rec_id,
        "book": book,
        "number": number,
        "matn": matn,
        "isnad": isnad,
        "grade": grade,
    }
