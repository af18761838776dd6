"""Session state machine binding the engine to raters, plus persistence.

A session owns a base melody, a scheme configuration and the generation
history. Only the latest generation is ratable; ``evolve`` requires it to
be fully rated, ``complete`` may be called at any point and freezes the
session. Randomness is re-derived from the seed per step (one stream for
initialization, one per evolve), so a reloaded session replays identically
given the same subsequent ratings.
"""

from __future__ import annotations

import json
import os
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from random import Random

from .evolution import (
    RATING_MAX,
    RATING_MIN,
    Generation,
    Individual,
    SchemeConfig,
    UnratedIndividualError,
    init_population,
    next_generation,
)
from .fitness import ObjectiveRater, ScriptedRater
from .genome import Key, Melody, decode_melody, encode_melody
from .melody_io import format_melody_doc, parse_melody_doc
from .midi import render_midi

FORMAT_VERSION = 1

STATUS_ACTIVE = "active"
STATUS_COMPLETE = "complete"


class SessionCompleteError(RuntimeError):
    """The session is frozen; no further mutation is allowed."""


class StaleGenerationError(ValueError):
    """Ratings may only target the latest generation."""


class BadIndexError(IndexError):
    """Generation or individual index outside the session's bounds."""


class ScoreOutOfRangeError(ValueError):
    def __init__(self, score: int):
        super().__init__(f"rating {score} outside [{RATING_MIN}, {RATING_MAX}]")


class SchemaMismatchError(ValueError):
    """A session file does not match the on-disk format."""


@dataclass
class Session:
    id: str
    base: Melody
    config: SchemeConfig
    generations: list[Generation] = field(default_factory=list)
    status: str = STATUS_ACTIVE
    final_individual_id: int | None = None

    @property
    def current(self) -> Generation:
        return self.generations[-1]


def _step_rng(seed: int, label: str) -> Random:
    # String seeding hashes with SHA-512 internally, so streams are stable
    # across processes and platforms.
    return Random(f"{seed}|{label}")


def create_session(melody_doc: str, scheme: str, seed: int,
                   mutate_offspring: bool = False,
                   session_id: str | None = None) -> Session:
    """Parse the base melody and build generation 0."""
    base = parse_melody_doc(melody_doc)
    config = SchemeConfig(scheme=scheme, seed=seed,
                          mutate_offspring=mutate_offspring)
    gen0 = init_population(base, config.population_size, _step_rng(seed, "init"))
    return Session(id=session_id or uuid.uuid4().hex, base=base, config=config,
                   generations=[gen0])


def _require_active(session: Session) -> None:
    if session.status != STATUS_ACTIVE:
        raise SessionCompleteError(f"session {session.id} is complete")


def _individual(generation: Generation, index: int) -> Individual:
    if not 0 <= index < len(generation.individuals):
        raise BadIndexError(f"no individual {index} in generation "
                            f"{generation.index}")
    return generation.individuals[index]


def rate(session: Session, generation_index: int, individual_index: int,
         score: int) -> None:
    """Store (or overwrite) a rating on the current generation."""
    _require_active(session)
    if generation_index != session.current.index:
        raise StaleGenerationError(
            f"generation {generation_index} is not the current generation "
            f"{session.current.index}")
    individual = _individual(session.current, individual_index)
    if not isinstance(score, int) or not RATING_MIN <= score <= RATING_MAX:
        raise ScoreOutOfRangeError(score)
    individual.rating = score


def evolve(session: Session) -> Generation:
    """Advance to the next generation; every individual must be rated."""
    _require_active(session)
    missing = [i for i, ind in enumerate(session.current.individuals)
               if ind.rating is None]
    if missing:
        raise UnratedIndividualError(missing)
    rng = _step_rng(session.config.seed, f"evolve|{session.current.index}")
    generation = next_generation(session.current, session.config, rng)
    session.generations.append(generation)
    return generation


def complete(session: Session, individual_index: int) -> Individual:
    """Freeze the session, marking one current individual as final."""
    _require_active(session)
    final = _individual(session.current, individual_index)
    session.status = STATUS_COMPLETE
    session.final_individual_id = final.id
    return final


def final_individual(session: Session) -> Individual:
    if session.final_individual_id is None:
        raise ValueError(f"session {session.id} has no final melody")
    for individual in session.current.individuals:
        if individual.id == session.final_individual_id:
            return individual
    raise ValueError(f"final individual {session.final_individual_id} missing")


# --- persistence -----------------------------------------------------------

def session_to_dict(session: Session) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "id": session.id,
        "key_tonic": session.base.key.tonic,
        "base_genome": encode_melody(session.base),
        "scheme": session.config.scheme,
        "seed": session.config.seed,
        "mutate_offspring": session.config.mutate_offspring,
        "status": session.status,
        "final_individual_id": session.final_individual_id,
        "generations": [
            {
                "index": generation.index,
                "individuals": [
                    {"id": ind.id, "genome": ind.genome, "rating": ind.rating}
                    for ind in generation.individuals
                ],
            }
            for generation in session.generations
        ],
    }


def session_from_dict(data: dict) -> Session:
    try:
        version = data["format_version"]
        if version != FORMAT_VERSION:
            raise SchemaMismatchError(
                f"session format {version}, expected {FORMAT_VERSION}")
        key = Key(data["key_tonic"])
        base = decode_melody(data["base_genome"], key)
        config = SchemeConfig(scheme=data["scheme"], seed=data["seed"],
                              mutate_offspring=data["mutate_offspring"])
        generations = []
        for gen_data in data["generations"]:
            individuals = [
                Individual(id=ind["id"], genome=ind["genome"],
                           melody=decode_melody(ind["genome"], key),
                           rating=ind["rating"])
                for ind in gen_data["individuals"]
            ]
            generations.append(Generation(index=gen_data["index"],
                                          individuals=individuals))
        return Session(id=data["id"], base=base, config=config,
                       generations=generations, status=data["status"],
                       final_individual_id=data["final_individual_id"])
    except SchemaMismatchError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaMismatchError(f"malformed session data: {exc}") from exc


def dumps_session(session: Session) -> str:
    """Canonical serialization; identical sessions give identical bytes."""
    return json.dumps(session_to_dict(session), sort_keys=True, indent=2) + "\n"


class SessionStore:
    """One JSON file per session id under a data directory.

    Writes go to a temp file first and are renamed into place, so readers
    only ever see whole files.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def save(self, session: Session) -> Path:
        target = self.path(session.id)
        tmp = target.with_suffix(".json.tmp")
        tmp.write_text(dumps_session(session), encoding="utf-8")
        os.replace(tmp, target)
        return target

    def load(self, session_id: str) -> Session:
        path = self.path(session_id)
        if not path.exists():
            raise KeyError(session_id)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaMismatchError(f"unreadable session file: {exc}") from exc
        return session_from_dict(data)

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.json"))


# --- headless driver -------------------------------------------------------

def _rate_all(session: Session, rater) -> list[int]:
    ratings = rater.rate_generation(session.current)
    for index, score in enumerate(ratings):
        rate(session, session.current.index, index, score)
    return ratings


def _best_index(generation: Generation) -> int:
    return min(range(len(generation.individuals)),
               key=lambda i: (-generation.individuals[i].rating,
                              generation.individuals[i].id))


def run_headless(melody_doc: str, scheme: str, seed: int,
                 rater: ObjectiveRater | ScriptedRater, generations: int,
                 out_dir: str | Path | None = None,
                 mutate_offspring: bool = False) -> Session:
    """Evolve without a human: auto-rate, step N times, emit artifacts.

    Writes ``trace.csv`` (generation, best, best_so_far), ``final.melody``,
    ``final.mid`` and the completed session file when out_dir is given.
    The session id is derived from the inputs so repeat runs are
    byte-identical.
    """
    session = create_session(melody_doc, scheme, seed,
                             mutate_offspring=mutate_offspring,
                             session_id=f"headless-{scheme}-seed{seed}")
    trace: list[tuple[int, int, int]] = []
    best_so_far = None
    for step in range(generations + 1):
        ratings = _rate_all(session, rater)
        best = max(ratings)
        best_so_far = best if best_so_far is None else max(best_so_far, best)
        trace.append((session.current.index, best, best_so_far))
        if step < generations:
            evolve(session)
    final = complete(session, _best_index(session.current))
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        rows = "".join(f"{g},{b},{bsf}\n" for g, b, bsf in trace)
        (out / "trace.csv").write_text("generation,best,best_so_far\n" + rows,
                                       encoding="utf-8")
        (out / "final.melody").write_text(format_melody_doc(final.melody),
                                          encoding="utf-8")
        (out / "final.mid").write_bytes(render_midi(session.base, final.melody))
        SessionStore(out).save(session)
    return session
