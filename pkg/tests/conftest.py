from __future__ import annotations

from pathlib import Path

import pytest

from xdt.dsl_parser import parse_program

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = FIXTURES / "golden"
CORPUS = Path(__file__).resolve().parent / "corpus"


@pytest.fixture(scope="session")
def typx_program():
    return parse_program((FIXTURES / "typx.xdt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def growlang_program():
    return parse_program((FIXTURES / "growlang.xdt").read_text(encoding="utf-8"))


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def corpus_files(kind: str) -> list[Path]:
    return sorted((CORPUS / kind).glob("*.gl"))
