"""Population schemes: ranking, initialization and the two update rules.

Scheme A keeps 6 individuals, drops the two weakest and replaces the whole
population with one offspring from each of the C(4,2)=6 survivor pairs.
Scheme B keeps 3, carries the two fittest forward verbatim and breeds the
third from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from random import Random

from .genome import Melody, encode_melody
from .variation import crossover, mutate

SCHEME_SIZES = {"a": 6, "b": 3}

RATING_MIN = 0
RATING_MAX = 100


class UnratedIndividualError(ValueError):
    """An operation that needs a fully rated generation found gaps."""

    def __init__(self, indices: list[int]):
        self.indices = indices
        super().__init__(f"unrated individuals at indices {indices}")


class WrongSchemeSizeError(ValueError):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"scheme expects population {expected}, got {actual}")


@dataclass
class Individual:
    """A genome with its decoded melody and an optional 0-100 rating."""

    id: int
    genome: str
    melody: Melody
    rating: int | None = None


@dataclass
class Generation:
    index: int
    individuals: list[Individual]


@dataclass(frozen=True)
class SchemeConfig:
    scheme: str
    seed: int
    mutate_offspring: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEME_SIZES:
            raise ValueError(f"scheme must be one of {sorted(SCHEME_SIZES)}")

    @property
    def population_size(self) -> int:
        return SCHEME_SIZES[self.scheme]


def init_population(base: Melody, size: int, rng: Random) -> Generation:
    """Generation 0: independent mutations of the base melody."""
    individuals = []
    for i in range(size):
        melody = mutate(base, rng)
        individuals.append(Individual(id=i, genome=encode_melody(melody),
                                      melody=melody))
    return Generation(index=0, individuals=individuals)


def rank(generation: Generation) -> list[int]:
    """Indices into the generation, best rating first, ties to lower id."""
    missing = [i for i, ind in enumerate(generation.individuals)
               if ind.rating is None]
    if missing:
        raise UnratedIndividualError(missing)
    return sorted(range(len(generation.individuals)),
                  key=lambda i: (-generation.individuals[i].rating,
                                 generation.individuals[i].id))


def _offspring(parent_a: Individual, parent_b: Individual, next_id: int,
               mutate_offspring: bool, rng: Random) -> Individual:
    outcome = crossover(parent_a.melody, parent_b.melody, rng)
    melody = outcome.product_a if rng.random() < 0.5 else outcome.product_b
    if mutate_offspring:
        melody = mutate(melody, rng)
    return Individual(id=next_id, genome=encode_melody(melody), melody=melody)


def evolve_scheme_a(generation: Generation, rng: Random,
                    mutate_offspring: bool = False) -> Generation:
    """Full replacement: drop the 2 weakest, breed all 6 survivor pairs.

    Each unordered pair of the 4 survivors contributes exactly one offspring
    (one of the two crossover products, chosen uniformly), restoring the
    population to 6. No parent survives.
    """
    if len(generation.individuals) != SCHEME_SIZES["a"]:
        raise WrongSchemeSizeError(SCHEME_SIZES["a"], len(generation.individuals))
    order = rank(generation)
    survivors = [generation.individuals[i] for i in order[:4]]
    next_id = max(ind.id for ind in generation.individuals) + 1
    children = []
    for pa, pb in itertools.combinations(survivors, 2):
        children.append(_offspring(pa, pb, next_id, mutate_offspring, rng))
        next_id += 1
    return Generation(index=generation.index + 1, individuals=children)


def evolve_scheme_b(generation: Generation, rng: Random,
                    mutate_offspring: bool = False) -> Generation:
    """Elitist update: keep the top 2 bit-identically, breed the third."""
    if len(generation.individuals) != SCHEME_SIZES["b"]:
        raise WrongSchemeSizeError(SCHEME_SIZES["b"], len(generation.individuals))
    order = rank(generation)
    best = generation.individuals[order[0]]
    second = generation.individuals[order[1]]
    next_id = max(ind.id for ind in generation.individuals) + 1
    child = _offspring(best, second, next_id, mutate_offspring, rng)
    survivors = [Individual(id=ind.id, genome=ind.genome, melody=ind.melody)
                 for ind in (best, second)]
    return Generation(index=generation.index + 1,
                      individuals=[*survivors, child])


def next_generation(generation: Generation, config: SchemeConfig,
                    rng: Random) -> Generation:
    step = evolve_scheme_a if config.scheme == "a" else evolve_scheme_b
    return step(generation, rng, mutate_offspring=config.mutate_offspring)
