"""Bit-level genome encoding of 8-bar melodies.

A melody genome is a string of '0'/'1' characters. Every 10 bits encode one
note event: the first 6 bits select a pitch or rest, the last 4 bits select
a duration. Durations are counted in 32nd-note ticks (quarter note = 8,
full 4/4 measure = 32) so all arithmetic stays integral.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from random import Random

# Pitch layout of the 6-bit field: values 0-13 and 50-63 are reserved for
# rests, the middle 36 values map onto MIDI pitches 48..83.
PITCH_MIN = 48
PITCH_MAX = 83
REST_LOW_MAX = 13
PITCH_FIELD_MIN = 14
PITCH_FIELD_MAX = 49

EVENT_BITS = 10
TICKS_PER_MEASURE = 32
MEASURES_PER_MELODY = 8
MELODY_TICKS = TICKS_PER_MEASURE * MEASURES_PER_MELODY
MAX_EVENTS_PER_MEASURE = 15

MAJOR_SCALE = (0, 2, 4, 5, 7, 9, 11)

# 4-bit duration field -> ticks. Quarter and half notes own three codes each,
# whole/eighth/sixteenth two, dotted values one, which skews random genomes
# toward the common durations.
DURATION_DECODE = {
    0b0000: 32, 0b0001: 16, 0b0010: 8, 0b0011: 4, 0b0100: 2,
    0b0101: 24, 0b0110: 12, 0b0111: 6, 0b1000: 3,
    0b1001: 32, 0b1010: 16, 0b1011: 8, 0b1100: 4, 0b1101: 2,
    0b1110: 8, 0b1111: 16,
}
# Canonical (lowest) code per duration, used when encoding.
DURATION_ENCODE = {}
for _code in sorted(DURATION_DECODE):
    DURATION_ENCODE.setdefault(DURATION_DECODE[_code], _code)
del _code

DURATION_TICKS = tuple(sorted(DURATION_ENCODE))  # (2, 3, 4, 6, 8, 12, 16, 24, 32)

REST_PROBABILITY = 1 / 8


class MelodyDecodeError(ValueError):
    """A genome does not decode into 8 valid 4/4 measures.

    ``kind`` is one of ``TotalTooShort``, ``TotalTooLong``,
    ``BoundaryStraddle`` or ``TooManyEvents``; ``measure`` (1-based) and
    ``event_index`` (0-based) locate the first violation where applicable.
    """

    def __init__(self, kind: str, measure: int | None = None,
                 event_index: int | None = None):
        self.kind = kind
        self.measure = measure
        self.event_index = event_index
        detail = kind
        if measure is not None:
            detail += f" in measure {measure}"
        if event_index is not None:
            detail += f" at event {event_index}"
        super().__init__(detail)


@dataclass(frozen=True)
class Key:
    """A major key, identified by its tonic pitch class (0-11, C=0)."""

    tonic: int

    def __post_init__(self):
        if not 0 <= self.tonic <= 11:
            raise ValueError(f"tonic must be a pitch class 0-11, got {self.tonic}")

    def pitch_classes(self) -> frozenset[int]:
        return frozenset((self.tonic + step) % 12 for step in MAJOR_SCALE)

    def contains(self, pitch: int) -> bool:
        return pitch % 12 in self.pitch_classes()


@dataclass(frozen=True)
class NoteEvent:
    """One decoded genome unit: a MIDI pitch (or None for a rest) + ticks."""

    pitch: int | None
    ticks: int

    def __post_init__(self):
        if self.pitch is not None and not PITCH_MIN <= self.pitch <= PITCH_MAX:
            raise ValueError(f"pitch {self.pitch} outside [{PITCH_MIN}, {PITCH_MAX}]")
        if self.ticks not in DURATION_ENCODE:
            raise ValueError(f"{self.ticks} ticks is not a representable duration")

    @property
    def is_rest(self) -> bool:
        return self.pitch is None


Measure = tuple[NoteEvent, ...]


@dataclass(frozen=True)
class Melody:
    """Eight validated 4/4 measures plus the key they were generated in."""

    measures: tuple[Measure, ...]
    key: Key

    def events(self) -> tuple[NoteEvent, ...]:
        return tuple(itertools.chain.from_iterable(self.measures))

    @property
    def total_ticks(self) -> int:
        return sum(e.ticks for m in self.measures for e in m)


@lru_cache(maxsize=12)
def pitches_in_key(key: Key) -> tuple[int, ...]:
    """All MIDI pitches in [48, 83] belonging to the key's major scale."""
    classes = key.pitch_classes()
    return tuple(p for p in range(PITCH_MIN, PITCH_MAX + 1) if p % 12 in classes)


def decode_event(bits10: str) -> NoteEvent:
    """Decode exactly 10 bits into a note event. Total on its domain."""
    if len(bits10) != EVENT_BITS:
        raise ValueError(f"expected {EVENT_BITS} bits, got {len(bits10)}")
    m = int(bits10[:6], 2)
    ticks = DURATION_DECODE[int(bits10[6:], 2)]
    if PITCH_FIELD_MIN <= m <= PITCH_FIELD_MAX:
        return NoteEvent(PITCH_MIN + (m - PITCH_FIELD_MIN), ticks)
    return NoteEvent(None, ticks)


def encode_event(event: NoteEvent) -> str:
    """Encode a note event as its canonical 10-bit string."""
    if event.pitch is None:
        m = 0
    else:
        m = event.pitch - PITCH_MIN + PITCH_FIELD_MIN
    code = DURATION_ENCODE[event.ticks]
    return f"{m:06b}{code:04b}"


def split_events(bits: str) -> list[NoteEvent]:
    """Decode consecutive 10-bit events, ignoring any trailing fragment."""
    usable = len(bits) - len(bits) % EVENT_BITS
    return [decode_event(bits[i:i + EVENT_BITS]) for i in range(0, usable, EVENT_BITS)]


def decode_melody(bits: str, key: Key) -> Melody:
    """Decode a genome into a melody, or raise MelodyDecodeError.

    The genome is valid iff its events total exactly 256 ticks, every
    cumulative sum hits the 32-tick barlines exactly, and no measure holds
    more than 15 events.
    """
    measures: list[Measure] = []
    current: list[NoteEvent] = []
    cum = 0
    for index, event in enumerate(split_events(bits)):
        if cum >= MELODY_TICKS:
            raise MelodyDecodeError("TotalTooLong", event_index=index)
        boundary = (cum // TICKS_PER_MEASURE + 1) * TICKS_PER_MEASURE
        measure_no = len(measures) + 1
        if cum + event.ticks > boundary:
            raise MelodyDecodeError("BoundaryStraddle", measure=measure_no,
                                    event_index=index)
        if len(current) == MAX_EVENTS_PER_MEASURE:
            raise MelodyDecodeError("TooManyEvents", measure=measure_no,
                                    event_index=index)
        current.append(event)
        cum += event.ticks
        if cum == boundary:
            measures.append(tuple(current))
            current = []
    if cum < MELODY_TICKS:
        raise MelodyDecodeError("TotalTooShort")
    return Melody(tuple(measures), key)


def encode_melody(melody: Melody) -> str:
    """Concatenate the canonical encodings of all events, in order."""
    return "".join(encode_event(e) for m in melody.measures for e in m)


def random_pitch_or_rest(key: Key, rng: Random) -> int | None:
    """A uniformly drawn in-key pitch, or (with probability 1/8) a rest."""
    if rng.random() < REST_PROBABILITY:
        return None
    return rng.choice(pitches_in_key(key))


def random_event_in_key(key: Key, max_ticks: int, rng: Random) -> NoteEvent:
    """A random in-key event whose duration fits within max_ticks."""
    allowed = [d for d in DURATION_TICKS if d <= max_ticks]
    if not allowed:
        raise ValueError(f"no representable duration fits in {max_ticks} ticks")
    pitch = random_pitch_or_rest(key, rng)
    return NoteEvent(pitch, rng.choice(allowed))


def _fillable_table() -> list[list[bool]]:
    # table[r][s]: can r ticks be filled with at most s events? A remainder
    # of 1 is reachable only when an odd (3-tick) event already exists, and
    # converting it to 2 ticks turns the remainder into 2 without using a slot.
    table = [[False] * (MAX_EVENTS_PER_MEASURE + 1)
             for _ in range(TICKS_PER_MEASURE + 1)]
    for s in range(MAX_EVENTS_PER_MEASURE + 1):
        table[0][s] = True
    for r in range(2, TICKS_PER_MEASURE + 1):
        for s in range(1, MAX_EVENTS_PER_MEASURE + 1):
            table[r][s] = any(table[r - d][s - 1] for d in DURATION_TICKS if d <= r)
    for s in range(MAX_EVENTS_PER_MEASURE + 1):
        table[1][s] = table[2][s]
    return table


_FILLABLE = _fillable_table()


def fill_measure_remainder(partial: list[NoteEvent], remaining: int, key: Key,
                           rng: Random) -> list[NoteEvent]:
    """Append random in-key events until the measure sums to 32 ticks.

    A remainder of 1 cannot be a single event; by parity the partial measure
    then contains a dotted sixteenth (3 ticks), which is shortened to a
    sixteenth so filling can continue. Durations are drawn only from choices
    that leave the rest of the measure completable within the 15-event cap;
    when the cap makes the remainder unfillable, trailing events are dropped
    to free slots.
    """
    events = list(partial)
    if sum(e.ticks for e in events) + remaining != TICKS_PER_MEASURE:
        raise ValueError("remaining does not complete the measure to 32 ticks")
    while remaining > 0:
        if remaining == 1:
            i = next(i for i, e in enumerate(events) if e.ticks == 3)
            events[i] = NoteEvent(events[i].pitch, 2)
            remaining = 2
            continue
        slots = MAX_EVENTS_PER_MEASURE - len(events)
        if slots > 0:
            choices = [d for d in DURATION_TICKS
                       if d <= remaining and _FILLABLE[remaining - d][slots - 1]]
        else:
            choices = []
        if not choices:
            dropped = events.pop()
            remaining += dropped.ticks
            continue
        pitch = random_pitch_or_rest(key, rng)
        ticks = rng.choice(choices)
        events.append(NoteEvent(pitch, ticks))
        remaining -= ticks
    return events


def random_measure(key: Key, rng: Random) -> Measure:
    """A fully random valid measure of in-key events."""
    return tuple(fill_measure_remainder([], TICKS_PER_MEASURE, key, rng))


def random_melody(key: Key, rng: Random) -> Melody:
    """Eight independent random measures; always valid."""
    return Melody(tuple(random_measure(key, rng) for _ in range(MEASURES_PER_MELODY)),
                  key)
