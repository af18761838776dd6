from __future__ import annotations

from random import Random

import pytest

from counterpoint_ga.evolution import (
    Generation,
    Individual,
    SchemeConfig,
    UnratedIndividualError,
    WrongSchemeSizeError,
    evolve_scheme_a,
    evolve_scheme_b,
    init_population,
    next_generation,
    rank,
)
from counterpoint_ga.fitness import ObjectiveRater
from counterpoint_ga.genome import decode_melody, encode_melody, random_melody

from conftest import uniform_melody


def rated_generation(ratings, melody, start_id=0):
    individuals = [
        Individual(id=start_id + i, genome=encode_melody(melody),
                   melody=melody, rating=r)
        for i, r in enumerate(ratings)
    ]
    return Generation(index=0, individuals=individuals)


def rank_oracle(ratings, ids):
    """Repeated max-extraction; independent of the sort in rank()."""
    remaining = list(range(len(ratings)))
    order = []
    while remaining:
        best = remaining[0]
        for i in remaining[1:]:
            if (ratings[i], -ids[i]) > (ratings[best], -ids[best]):
                best = i
        order.append(best)
        remaining.remove(best)
    return order


def test_init_population_shape(example_melody):
    rng = Random(1)
    generation = init_population(example_melody, 6, rng)
    assert generation.index == 0
    assert len(generation.individuals) == 6
    assert all(ind.rating is None for ind in generation.individuals)
    for ind in generation.individuals:
        assert decode_melody(ind.genome, example_melody.key) == ind.melody


def test_init_population_is_deterministic(example_melody):
    a = init_population(example_melody, 6, Random(9))
    b = init_population(example_melody, 6, Random(9))
    assert [i.genome for i in a.individuals] == [i.genome for i in b.individuals]


def test_init_population_mutates_base(example_melody):
    # At least one operator fires per pair, so matching the base verbatim
    # is vanishingly rare; with this seed every individual differs.
    rng = Random(123)
    base_bits = encode_melody(example_melody)
    differing = 0
    for _ in range(200):
        generation = init_population(example_melody, 3, rng)
        differing += sum(ind.genome != base_bits
                         for ind in generation.individuals)
    assert differing == 600


def test_rank_orders_by_rating(example_melody):
    generation = rated_generation([50, 70, 60], example_melody)
    assert rank(generation) == [1, 2, 0]


def test_rank_breaks_ties_by_lower_id(example_melody):
    generation = rated_generation([70, 70, 10], example_melody)
    assert rank(generation) == [0, 1, 2]


def test_rank_matches_oracle(example_melody):
    rng = Random(77)
    for _ in range(300):
        n = rng.choice([3, 6])
        ratings = [rng.randrange(0, 101) for _ in range(n)]
        generation = rated_generation(ratings, example_melody)
        ids = [ind.id for ind in generation.individuals]
        assert rank(generation) == rank_oracle(ratings, ids)


def test_rank_requires_full_ratings(example_melody):
    generation = rated_generation([50, None, 60], example_melody)
    with pytest.raises(UnratedIndividualError) as err:
        rank(generation)
    assert err.value.indices == [1]


def test_scheme_a_replaces_population(c_major):
    rng = Random(5)
    parents = Generation(index=3, individuals=[
        Individual(id=i, genome=encode_melody(m), melody=m, rating=r)
        for i, (m, r) in enumerate(
            (random_melody(c_major, rng), r)
            for r in [10, 90, 40, 70, 20, 55])
    ])
    child_gen = evolve_scheme_a(parents, rng)
    assert child_gen.index == 4
    assert len(child_gen.individuals) == 6
    assert all(ind.rating is None for ind in child_gen.individuals)
    parent_ids = {ind.id for ind in parents.individuals}
    assert parent_ids.isdisjoint({ind.id for ind in child_gen.individuals})
    # The two eliminated genomes (ratings 10 and 20) never survive verbatim.
    eliminated = {parents.individuals[0].genome, parents.individuals[4].genome}
    assert eliminated.isdisjoint({ind.genome for ind in child_gen.individuals})


def test_scheme_a_identical_parents_breed_identical_offspring(c_major):
    melody = uniform_melody(64, 8)
    generation = rated_generation([60] * 6, melody)
    child_gen = evolve_scheme_a(generation, Random(13))
    assert all(ind.melody == melody for ind in child_gen.individuals)


def test_scheme_a_size_check(example_melody):
    with pytest.raises(WrongSchemeSizeError):
        evolve_scheme_a(rated_generation([50, 60, 70], example_melody),
                        Random(0))


def test_scheme_a_requires_ratings(example_melody):
    generation = rated_generation([50, 60, 70, 80, 90, None], example_melody)
    with pytest.raises(UnratedIndividualError) as err:
        evolve_scheme_a(generation, Random(0))
    assert err.value.indices == [5]


def test_scheme_b_carries_top_two_verbatim(c_major):
    rng = Random(19)
    melodies = [random_melody(c_major, rng) for _ in range(3)]
    parents = Generation(index=0, individuals=[
        Individual(id=i, genome=encode_melody(m), melody=m, rating=r)
        for i, (m, r) in enumerate(zip(melodies, [50, 70, 60]))
    ])
    child_gen = evolve_scheme_b(parents, rng)
    assert len(child_gen.individuals) == 3
    assert child_gen.individuals[0].genome == parents.individuals[1].genome
    assert child_gen.individuals[0].id == parents.individuals[1].id
    assert child_gen.individuals[1].genome == parents.individuals[2].genome
    assert all(ind.rating is None for ind in child_gen.individuals)
    assert child_gen.individuals[2].id == 3


def test_scheme_b_size_check(example_melody):
    with pytest.raises(WrongSchemeSizeError):
        evolve_scheme_b(rated_generation([1, 2, 3, 4, 5, 6], example_melody),
                        Random(0))


def test_scheme_b_objective_best_never_decreases(example_melody):
    rng = Random(43)
    rater = ObjectiveRater(example_melody)
    generation = init_population(example_melody, 3, rng)
    best_so_far = None
    for _ in range(15):
        ratings = rater.rate_generation(generation)
        for ind, rating in zip(generation.individuals, ratings):
            ind.rating = rating
        best = max(ratings)
        assert best_so_far is None or best >= best_so_far
        best_so_far = best
        generation = evolve_scheme_b(generation, rng)


def test_next_generation_dispatch(example_melody):
    config_a = SchemeConfig(scheme="a", seed=1)
    generation = rated_generation([10, 20, 30, 40, 50, 60], example_melody)
    assert len(next_generation(generation, config_a, Random(1)).individuals) == 6
    config_b = SchemeConfig(scheme="b", seed=1)
    generation = rated_generation([10, 20, 30], example_melody)
    assert len(next_generation(generation, config_b, Random(1)).individuals) == 3


def test_scheme_config_validation():
    with pytest.raises(ValueError):
        SchemeConfig(scheme="c", seed=0)
    assert SchemeConfig(scheme="a", seed=0).population_size == 6
    assert SchemeConfig(scheme="b", seed=0).population_size == 3
