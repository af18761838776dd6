"""HTTP session API.

Thin JSON layer over the session state machine; every mutating request is
persisted before the response is sent, and requests to the same session are
serialized through a per-session lock.
"""

from __future__ import annotations

import threading
from collections import defaultdict
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import session as svc
from .evolution import Generation, Individual, UnratedIndividualError
from .genome import Melody
from .melody_io import MelodyParseError, format_melody_doc
from .midi import TEMPO_BPM, render_midi

MIDI_MEDIA_TYPE = "audio/midi"


class CreateSessionRequest(BaseModel):
    melody_doc: str
    scheme: str
    seed: int
    mutate_offspring: bool = False


class RatingRequest(BaseModel):
    score: int


class CompleteRequest(BaseModel):
    individual: int


def _events_json(melody: Melody) -> list[dict]:
    events = []
    onset = 0
    for event in melody.events():
        events.append({"pitch": event.pitch, "ticks": event.ticks,
                       "onset": onset})
        onset += event.ticks
    return events


def _individual_json(individual: Individual) -> dict:
    return {"id": individual.id, "rating": individual.rating,
            "events": len(individual.melody.events())}


def _generation_json(generation: Generation) -> dict:
    return {
        "index": generation.index,
        "size": len(generation.individuals),
        "individuals": [_individual_json(ind)
                        for ind in generation.individuals],
    }


def _session_json(session: svc.Session) -> dict:
    return {
        "id": session.id,
        "scheme": session.config.scheme,
        "seed": session.config.seed,
        "status": session.status,
        "population_size": session.config.population_size,
        "generation_count": len(session.generations),
        "current_generation": session.current.index,
        "final_individual_id": session.final_individual_id,
    }


def create_app(data_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    store = svc.SessionStore(data_dir)
    app = FastAPI(title="counterpoint-ga")
    sessions: dict[str, svc.Session] = {}
    locks: dict[str, threading.Lock] = defaultdict(threading.Lock)

    def get_session(session_id: str) -> svc.Session:
        if session_id not in sessions:
            try:
                sessions[session_id] = store.load(session_id)
            except KeyError:
                raise HTTPException(404, {"error": "UnknownSession",
                                          "id": session_id})
            except svc.SchemaMismatchError as exc:
                raise HTTPException(500, {"error": "SchemaMismatch",
                                          "detail": str(exc)})
        return sessions[session_id]

    def get_generation(session: svc.Session, index: int) -> Generation:
        if not 0 <= index < len(session.generations):
            raise HTTPException(404, {"error": "UnknownGeneration",
                                      "index": index})
        return session.generations[index]

    def get_individual(generation: Generation, index: int) -> Individual:
        if not 0 <= index < len(generation.individuals):
            raise HTTPException(404, {"error": "BadIndex", "index": index})
        return generation.individuals[index]

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        try:
            session = svc.create_session(body.melody_doc, body.scheme,
                                         body.seed, body.mutate_offspring)
        except MelodyParseError as exc:
            raise HTTPException(422, {"error": exc.code,
                                      "line": exc.line_no,
                                      "detail": str(exc)})
        except ValueError as exc:
            raise HTTPException(422, {"error": "BadConfig", "detail": str(exc)})
        with locks[session.id]:
            sessions[session.id] = session
            store.save(session)
        return {"session": _session_json(session),
                "generation": _generation_json(session.current)}

    @app.get("/sessions/{session_id}")
    def show_session(session_id: str):
        return _session_json(get_session(session_id))

    @app.get("/sessions/{session_id}/generations/{gen_index}")
    def show_generation(session_id: str, gen_index: int):
        session = get_session(session_id)
        return _generation_json(get_generation(session, gen_index))

    @app.put("/sessions/{session_id}/generations/{gen_index}"
             "/individuals/{ind_index}/rating")
    def put_rating(session_id: str, gen_index: int, ind_index: int,
                   body: RatingRequest):
        session = get_session(session_id)
        with locks[session_id]:
            get_generation(session, gen_index)
            try:
                svc.rate(session, gen_index, ind_index, body.score)
            except svc.SessionCompleteError as exc:
                raise HTTPException(409, {"error": "SessionComplete",
                                          "detail": str(exc)})
            except svc.StaleGenerationError as exc:
                raise HTTPException(409, {"error": "StaleGeneration",
                                          "detail": str(exc)})
            except svc.BadIndexError as exc:
                raise HTTPException(404, {"error": "BadIndex",
                                          "detail": str(exc)})
            except svc.ScoreOutOfRangeError as exc:
                raise HTTPException(422, {"error": "ScoreOutOfRange",
                                          "detail": str(exc)})
            store.save(session)
        return _generation_json(session.current)

    @app.post("/sessions/{session_id}/evolve")
    def evolve_session(session_id: str):
        session = get_session(session_id)
        with locks[session_id]:
            try:
                generation = svc.evolve(session)
            except svc.SessionCompleteError as exc:
                raise HTTPException(409, {"error": "SessionComplete",
                                          "detail": str(exc)})
            except UnratedIndividualError as exc:
                raise HTTPException(409, {"error": "UnratedIndividual",
                                          "indices": exc.indices,
                                          "detail": str(exc)})
            store.save(session)
        return _generation_json(generation)

    @app.post("/sessions/{session_id}/complete")
    def complete_session(session_id: str, body: CompleteRequest):
        session = get_session(session_id)
        with locks[session_id]:
            try:
                final = svc.complete(session, body.individual)
            except svc.SessionCompleteError as exc:
                raise HTTPException(409, {"error": "SessionComplete",
                                          "detail": str(exc)})
            except svc.BadIndexError as exc:
                raise HTTPException(404, {"error": "BadIndex",
                                          "detail": str(exc)})
            store.save(session)
        return {"session": _session_json(session),
                "final": _individual_json(final),
                "melody_doc": format_melody_doc(final.melody)}

    @app.get("/sessions/{session_id}/generations/{gen_index}"
             "/individuals/{ind_index}/midi")
    def individual_midi(session_id: str, gen_index: int, ind_index: int):
        session = get_session(session_id)
        generation = get_generation(session, gen_index)
        individual = get_individual(generation, ind_index)
        data = render_midi(session.base, individual.melody)
        return Response(content=data, media_type=MIDI_MEDIA_TYPE)

    @app.get("/sessions/{session_id}/generations/{gen_index}"
             "/individuals/{ind_index}/events")
    def individual_events(session_id: str, gen_index: int, ind_index: int):
        session = get_session(session_id)
        generation = get_generation(session, gen_index)
        individual = get_individual(generation, ind_index)
        return {
            "bpm": TEMPO_BPM,
            "ticks_per_quarter": 8,
            "voices": {
                "base": _events_json(session.base),
                "counterpoint": _events_json(individual.melody),
            },
        }

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
