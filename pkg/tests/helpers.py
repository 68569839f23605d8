"""Shared helpers for fixture-backed tests."""

import json
from pathlib import Path
from typing import Any

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def fixture_path(*parts: str) -> Path:
    """Return the path of a file under ``tests/fixtures``."""
    return FIXTURES_DIR.joinpath(*parts)


def load_fixture(*parts: str) -> dict[str, Any]:
    """Load a JSON fixture from ``tests/fixtures``."""
    with open(fixture_path(*parts), encoding="utf-8") as fixture_file:
        return json.load(fixture_file)


def load_text(*parts: str) -> str:
    """Load a text fixture (terms, programs, triples) from ``tests/fixtures``."""
    return fixture_path(*parts).read_text(encoding="utf-8")
