"""Interactive genetic algorithm for evolving 8-bar counterpoint melodies."""

from .evolution import (
    Generation,
    Individual,
    SchemeConfig,
    UnratedIndividualError,
    WrongSchemeSizeError,
    evolve_scheme_a,
    evolve_scheme_b,
    init_population,
    rank,
)
from .fitness import (
    DEFAULT_WEIGHTS,
    ObjectiveRater,
    ObjectiveWeights,
    ScriptedRater,
    harmonic_score,
    objective_rating,
    parse_ratings_schedule,
    rhythmic_score,
)
from .genome import (
    Key,
    Melody,
    MelodyDecodeError,
    NoteEvent,
    decode_event,
    decode_melody,
    encode_event,
    encode_melody,
    fill_measure_remainder,
    random_event_in_key,
    random_melody,
)
from .melody_io import MelodyParseError, format_melody_doc, parse_melody_doc
from .midi import render_midi
from .session import (
    Session,
    SessionStore,
    complete,
    create_session,
    evolve,
    rate,
    run_headless,
)
from .variation import (
    CrossoverOutcome,
    PairOperator,
    apply_pair_operator,
    crossover,
    insert_with_compensation,
    mutate,
    repair,
)

__version__ = "0.1.0"
