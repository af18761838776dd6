"""Command line interface: serve, evolve, render, validate."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .fitness import ObjectiveRater, ScriptedRater, parse_ratings_schedule
from .melody_io import MelodyParseError, parse_melody_doc
from .midi import render_midi
from .session import run_headless

DATA_DIR_ENV = "COUNTERPOINT_GA_DATA_DIR"
DEFAULT_DATA_DIR = "./sessions"


def _default_data_dir() -> str:
    return os.environ.get(DATA_DIR_ENV, DEFAULT_DATA_DIR)


def _read_melody(path: str):
    return parse_melody_doc(Path(path).read_text(encoding="utf-8"))


def _make_rater(spec: str, base):
    if spec == "objective":
        return ObjectiveRater(base)
    if spec.startswith("scripted:"):
        schedule_path = spec.split(":", 1)[1]
        text = Path(schedule_path).read_text(encoding="utf-8")
        return ScriptedRater(parse_ratings_schedule(text))
    raise SystemExit(f"unknown rater {spec!r}; use 'objective' or 'scripted:FILE'")


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(args.data_dir, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_evolve(args) -> int:
    doc = Path(args.melody).read_text(encoding="utf-8")
    base = parse_melody_doc(doc)
    rater = _make_rater(args.rater, base)
    session = run_headless(doc, args.scheme, args.seed, rater,
                           args.generations, out_dir=args.out_dir,
                           mutate_offspring=args.mutate_offspring)
    best = max(ind.rating for ind in session.current.individuals)
    print(f"session {session.id}: {len(session.generations)} generations, "
          f"best rating {best}")
    print(f"artifacts written to {args.out_dir}")
    return 0


def cmd_render(args) -> int:
    base = _read_melody(args.melody)
    counterpoint = _read_melody(args.counterpoint) if args.counterpoint else None
    Path(args.out).write_bytes(render_midi(base, counterpoint))
    print(f"wrote {args.out}")
    return 0


def cmd_validate(args) -> int:
    try:
        melody = _read_melody(args.melody)
    except MelodyParseError as exc:
        print(f"{args.melody}: {exc}", file=sys.stderr)
        return 1
    events = len(melody.events())
    print(f"{args.melody}: valid, {len(melody.measures)} measures, "
          f"{events} events")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="counterpoint-ga",
        description="Evolve 8-bar counterpoint melodies against a base melody")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP session API")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data-dir", default=_default_data_dir())
    serve.add_argument("--ui-dir", default=None,
                       help="optional static directory mounted at /ui")
    serve.set_defaults(func=cmd_serve)

    evolve = sub.add_parser("evolve", help="run a headless evolution")
    evolve.add_argument("--melody", required=True)
    evolve.add_argument("--scheme", choices=("a", "b"), required=True)
    evolve.add_argument("--seed", type=int, required=True)
    evolve.add_argument("--generations", type=int, default=20)
    evolve.add_argument("--rater", default="objective",
                        help="'objective' or 'scripted:FILE'")
    evolve.add_argument("--out-dir", default="./out")
    evolve.add_argument("--mutate-offspring", action="store_true")
    evolve.set_defaults(func=cmd_evolve)

    render = sub.add_parser("render", help="write a melody as a MIDI file")
    render.add_argument("--melody", required=True)
    render.add_argument("--counterpoint", default=None,
                        help="optional second voice")
    render.add_argument("--out", required=True)
    render.set_defaults(func=cmd_render)

    validate = sub.add_parser("validate", help="check a melody document")
    validate.add_argument("--melody", required=True)
    validate.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MelodyParseError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
