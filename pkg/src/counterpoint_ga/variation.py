"""Genetic operators: bit-level crossover with repair, and pair mutation.

Crossover swaps bitstring prefixes between two parent genomes and repairs
each product back into a valid 8-measure melody. Mutation walks each measure
in disjoint event pairs, applying 1-4 musical operators per pair and
occasionally inserting an extra in-key note with duration compensation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from random import Random

from .genome import (
    DURATION_TICKS,
    MAX_EVENTS_PER_MEASURE,
    MEASURES_PER_MELODY,
    MELODY_TICKS,
    PITCH_MAX,
    PITCH_MIN,
    TICKS_PER_MEASURE,
    Key,
    Measure,
    Melody,
    NoteEvent,
    encode_melody,
    fill_measure_remainder,
    pitches_in_key,
    random_measure,
    split_events,
)


class PairOperator(enum.Enum):
    """The four pairwise mutation operators, in canonical application order."""

    INVERT = "invert"
    REVERSE = "reverse"
    AUGMENT = "augment"
    DIMINISH = "diminish"


# The 15 non-empty operator subsets, each drawn with equal probability.
OPERATOR_SUBSETS: tuple[frozenset[PairOperator], ...] = tuple(
    frozenset(combo)
    for size in range(1, 5)
    for combo in itertools.combinations(PairOperator, size)
)

INSERT_PROBABILITY = 0.2

# Repair action tags. When truncation leaves the melody short, the padding
# pass that follows is the "reverse" fallback operation.
TRUNCATED = "truncated"
PADDED = "padded"
REVERSE_FALLBACK = "reverse_fallback"


@dataclass(frozen=True)
class CrossoverOutcome:
    product_a: Melody
    product_b: Melody
    cut_bit: int
    repairs_a: tuple[str, ...]
    repairs_b: tuple[str, ...]


def fold_into_range(pitch: int) -> int:
    """Shift a pitch by octaves until it lies in [48, 83]."""
    while pitch < PITCH_MIN:
        pitch += 12
    while pitch > PITCH_MAX:
        pitch -= 12
    return pitch


def apply_pair_operator(op: PairOperator, e1: NoteEvent,
                        e2: NoteEvent) -> tuple[NoteEvent, NoteEvent]:
    """Apply one operator to an event pair.

    REVERSE swaps the whole events; the pitch operators leave rests alone
    since an interval against silence is undefined.
    """
    if op is PairOperator.REVERSE:
        return e2, e1
    if e1.pitch is None or e2.pitch is None:
        return e1, e2
    p1, p2 = e1.pitch, e2.pitch
    if op is PairOperator.INVERT:
        new = fold_into_range(2 * p1 - p2)
    elif op is PairOperator.AUGMENT:
        new = fold_into_range(p2 + 1 if p2 >= p1 else p2 - 1)
    elif op is PairOperator.DIMINISH:
        if p2 == p1:
            return e1, e2
        new = fold_into_range(p2 - 1 if p2 > p1 else p2 + 1)
    else:  # pragma: no cover - enum is closed
        raise ValueError(op)
    return e1, NoteEvent(new, e2.ticks)


def insert_with_compensation(e_prev: NoteEvent, e_next: NoteEvent, key: Key,
                             rng: Random) -> list[NoteEvent]:
    """Insert a random in-key note between two events, preserving ticks.

    One neighbour (prior with probability .5, else subsequent) donates the
    inserted duration by shrinking; if no split of its duration exists in
    the duration set, the neighbour is removed and the new note takes its
    full length.
    """
    shrink_prev = rng.random() < 0.5
    neighbor = e_prev if shrink_prev else e_next
    splits = [d for d in DURATION_TICKS
              if d < neighbor.ticks and neighbor.ticks - d in DURATION_TICKS]
    pitch = rng.choice(pitches_in_key(key))
    if splits:
        ticks = rng.choice(splits)
        inserted = NoteEvent(pitch, ticks)
        shrunk = NoteEvent(neighbor.pitch, neighbor.ticks - ticks)
        if shrink_prev:
            return [shrunk, inserted, e_next]
        return [e_prev, inserted, shrunk]
    inserted = NoteEvent(pitch, neighbor.ticks)
    if shrink_prev:
        return [inserted, e_next]
    return [e_prev, inserted]


def draw_operator_subset(rng: Random) -> frozenset[PairOperator]:
    """One of the 15 non-empty operator subsets, uniformly."""
    return OPERATOR_SUBSETS[rng.randrange(len(OPERATOR_SUBSETS))]


def _mutate_measure(measure: Measure, key: Key, rng: Random) -> Measure:
    events = list(measure)
    out: list[NoteEvent] = []
    inserts = 0
    i = 0
    while i + 1 < len(events):
        e1, e2 = events[i], events[i + 1]
        subset = draw_operator_subset(rng)
        for op in PairOperator:
            if op in subset:
                e1, e2 = apply_pair_operator(op, e1, e2)
        pair: list[NoteEvent] = [e1, e2]
        if rng.random() < INSERT_PROBABILITY:
            # An insertion may grow the measure by one event; skip it when
            # the 15-event cap would be exceeded.
            if len(events) + inserts + 1 <= MAX_EVENTS_PER_MEASURE:
                pair = insert_with_compensation(e1, e2, key, rng)
                inserts += len(pair) - 2
        out.extend(pair)
        i += 2
    if i < len(events):
        out.append(events[i])
    return tuple(out)


def mutate(melody: Melody, rng: Random) -> Melody:
    """Mutate every disjoint event pair of every measure.

    Each pair receives a uniformly drawn non-empty subset of the four
    operators, applied in canonical order, then with probability .2 an
    extra in-key note is inserted between the pair. A trailing unpaired
    event is left untouched.
    """
    measures = tuple(_mutate_measure(m, melody.key, rng) for m in melody.measures)
    return Melody(measures, melody.key)


def repair(bits: str, key: Key, rng: Random) -> tuple[Melody, tuple[str, ...]]:
    """Force an arbitrary bitstring into a valid melody.

    Events are kept greedily while they respect barlines, the 15-event cap
    and the 256-tick total; the first violating event and everything after
    it are dropped. A short result is padded with random in-key events, the
    open measure first, then whole random measures up to eight.

    Returns the melody and the repair actions applied, in order.
    """
    measures: list[Measure] = []
    current: list[NoteEvent] = []
    cum = 0
    truncated = False
    for event in split_events(bits):
        if cum >= MELODY_TICKS:
            truncated = True
            break
        boundary = (cum // TICKS_PER_MEASURE + 1) * TICKS_PER_MEASURE
        if cum + event.ticks > boundary or len(current) == MAX_EVENTS_PER_MEASURE:
            truncated = True
            break
        current.append(event)
        cum += event.ticks
        if cum == boundary:
            measures.append(tuple(current))
            current = []
    padded = False
    if cum < MELODY_TICKS or len(measures) < MEASURES_PER_MELODY:
        padded = True
        if current or cum % TICKS_PER_MEASURE:
            remaining = TICKS_PER_MEASURE - cum % TICKS_PER_MEASURE
            measures.append(tuple(fill_measure_remainder(current, remaining, key, rng)))
        while len(measures) < MEASURES_PER_MELODY:
            measures.append(random_measure(key, rng))
    if truncated and padded:
        actions = (TRUNCATED, REVERSE_FALLBACK)
    elif truncated:
        actions = (TRUNCATED,)
    elif padded:
        actions = (PADDED,)
    else:
        actions = ()
    return Melody(tuple(measures), key), actions


def crossover(m1: Melody, m2: Melody, rng: Random) -> CrossoverOutcome:
    """Single-point bit crossover with repair.

    The cut is drawn uniformly from [1, min(len1, len2) - 1] so both
    prefixes are non-empty; product A is parent 2's prefix joined to parent
    1's suffix, product B the converse. Both products are repaired to
    validity before being returned.
    """
    if m1.key != m2.key:
        raise ValueError("crossover parents must share a key")
    bits1 = encode_melody(m1)
    bits2 = encode_melody(m2)
    cut = rng.randrange(1, min(len(bits1), len(bits2)))
    product_a, repairs_a = repair(bits2[:cut] + bits1[cut:], m1.key, rng)
    product_b, repairs_b = repair(bits1[:cut] + bits2[cut:], m1.key, rng)
    return CrossoverOutcome(product_a, product_b, cut, repairs_a, repairs_b)
