"""Fitness sources: a deterministic consonance scorer and scripted raters.

The objective scorer blends two fractions: the share of sounding ticks at a
consonant interval against the base voice, and a rhythmic smoothness score
that penalizes abrupt duration jumps between neighbouring events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .evolution import RATING_MAX, RATING_MIN, Generation
from .genome import MELODY_TICKS, Melody

# Interval classes (semitones mod 12) dissonant against the base voice:
# minor 2nd, minor 3rd, tritone, minor 6th, minor 7th.
DISSONANT_INTERVAL_CLASSES = frozenset({1, 3, 6, 8, 10})

# Mean |log2| duration ratio at which the rhythmic score bottoms out; a
# strict whole-note/sixteenth alternation has ratio 16 and hits it exactly.
MAX_MEAN_JERK = 4.0


@dataclass(frozen=True)
class ObjectiveWeights:
    harmonic_weight: float = 0.7
    rhythmic_weight: float = 0.3

    def __post_init__(self):
        if self.harmonic_weight < 0 or self.rhythmic_weight < 0:
            raise ValueError("weights must be non-negative")
        if not math.isclose(self.harmonic_weight + self.rhythmic_weight, 1.0):
            raise ValueError("weights must sum to 1")


DEFAULT_WEIGHTS = ObjectiveWeights()


def tick_pitches(melody: Melody) -> list[int | None]:
    """The sounding pitch (or None during rests) at each of the 256 ticks."""
    pitches: list[int | None] = []
    for event in melody.events():
        pitches.extend([event.pitch] * event.ticks)
    return pitches


def harmonic_score(counterpoint: Melody, base: Melody) -> float:
    """Fraction of both-sounding ticks at a consonant interval class.

    Ticks where either voice rests are excluded; if the voices never sound
    together the score is a neutral 0.5.
    """
    cp = tick_pitches(counterpoint)
    bs = tick_pitches(base)
    sounding = 0
    consonant = 0
    for tick in range(MELODY_TICKS):
        if cp[tick] is None or bs[tick] is None:
            continue
        sounding += 1
        if abs(cp[tick] - bs[tick]) % 12 not in DISSONANT_INTERVAL_CLASSES:
            consonant += 1
    if sounding == 0:
        return 0.5
    return consonant / sounding


def rhythmic_score(melody: Melody) -> float:
    """1 minus the clamped mean |log2| duration ratio of adjacent events."""
    events = melody.events()
    if len(events) < 2:
        return 1.0
    jerk = [abs(math.log2(b.ticks / a.ticks))
            for a, b in zip(events, events[1:])]
    mean = sum(jerk) / len(jerk)
    return 1.0 - min(1.0, mean / MAX_MEAN_JERK)


def objective_rating(counterpoint: Melody, base: Melody,
                     weights: ObjectiveWeights = DEFAULT_WEIGHTS) -> int:
    """Weighted blend of the two scores, rounded onto the 0-100 scale."""
    score = (weights.harmonic_weight * harmonic_score(counterpoint, base)
             + weights.rhythmic_weight * rhythmic_score(melody=counterpoint))
    return round(100 * score)


class ObjectiveRater:
    """Deterministic rater backed by the consonance scorer."""

    def __init__(self, base: Melody, weights: ObjectiveWeights = DEFAULT_WEIGHTS):
        self.base = base
        self.weights = weights

    def rate_generation(self, generation: Generation) -> list[int]:
        return [objective_rating(ind.melody, self.base, self.weights)
                for ind in generation.individuals]


class ScriptedRater:
    """Replays a fixed ratings schedule, one row per generation."""

    def __init__(self, schedule: list[list[int]]):
        self.schedule = schedule

    def rate_generation(self, generation: Generation) -> list[int]:
        if generation.index >= len(self.schedule):
            raise ValueError(
                f"ratings schedule has no row for generation {generation.index}")
        row = self.schedule[generation.index]
        if len(row) < len(generation.individuals):
            raise ValueError(
                f"generation {generation.index} needs "
                f"{len(generation.individuals)} ratings, schedule row has {len(row)}")
        return row[:len(generation.individuals)]


def parse_ratings_schedule(text: str) -> list[list[int]]:
    """One line per generation: space-separated integer ratings 0-100."""
    schedule = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise ValueError(f"line {line_no}: {token!r} is not an integer")
            if not RATING_MIN <= value <= RATING_MAX:
                raise ValueError(f"line {line_no}: rating {value} outside 0-100")
            row.append(value)
        schedule.append(row)
    return schedule
