from __future__ import annotations

from pathlib import Path
from random import Random

import pytest

from counterpoint_ga.genome import Key, Melody, NoteEvent
from counterpoint_ga.melody_io import parse_melody_doc

REPO_ROOT = Path(__file__).resolve().parent.parent
EXAMPLE_MELODY_PATH = REPO_ROOT / "melodies" / "example_c_major.melody"


@pytest.fixture
def c_major() -> Key:
    return Key(0)


@pytest.fixture
def rng() -> Random:
    return Random(0xC0FFEE)


@pytest.fixture
def example_doc() -> str:
    return EXAMPLE_MELODY_PATH.read_text(encoding="utf-8")


@pytest.fixture
def example_melody(example_doc) -> Melody:
    return parse_melody_doc(example_doc)


def uniform_melody(pitch: int | None, ticks: int, key: Key = Key(0)) -> Melody:
    """A melody repeating one event; ticks must divide 32."""
    measure = tuple(NoteEvent(pitch, ticks) for _ in range(32 // ticks))
    return Melody(tuple(measure for _ in range(8)), key)
