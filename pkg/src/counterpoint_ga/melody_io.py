"""Text format for base melodies.

Line-oriented, '#' starts a comment. The first content line declares the
key (``key: C major``); every following line is one event: a pitch (note
name with octave, a bare MIDI number 48-83, or ``R`` for a rest) and a
duration code from {w h q e s dh dq de ds}. Events accumulate left to right
into 4/4 measures and the document must yield exactly eight of them.
"""

from __future__ import annotations

from .genome import (
    MAX_EVENTS_PER_MEASURE,
    MEASURES_PER_MELODY,
    MELODY_TICKS,
    PITCH_MAX,
    PITCH_MIN,
    TICKS_PER_MEASURE,
    Key,
    Melody,
    NoteEvent,
)

DURATION_CODES = {
    "w": 32, "h": 16, "q": 8, "e": 4, "s": 2,
    "dh": 24, "dq": 12, "de": 6, "ds": 3,
}
TICKS_TO_CODE = {ticks: code for code, ticks in DURATION_CODES.items()}

NOTE_LETTER_CLASSES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
SHARP_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


class MelodyParseError(ValueError):
    """A melody document failed to parse; carries the offending line."""

    def __init__(self, line_no: int, code: str, message: str):
        self.line_no = line_no
        self.code = code
        super().__init__(f"line {line_no}: {code}: {message}")


def strip_comment(line: str) -> str:
    """Drop a '#' comment; sharps as in ``F#4`` are not comment starts."""
    for i, ch in enumerate(line):
        if ch == "#" and (i == 0 or line[i - 1] in " \t"):
            return line[:i]
    return line


def parse_pitch_class(name: str) -> int | None:
    """Pitch class of a note name like ``C``, ``F#`` or ``Bb``; None if bad."""
    if not name or name[0].upper() not in NOTE_LETTER_CLASSES:
        return None
    pc = NOTE_LETTER_CLASSES[name[0].upper()]
    for accidental in name[1:]:
        if accidental == "#":
            pc += 1
        elif accidental in ("b", "!"):
            pc -= 1
        else:
            return None
    return pc % 12


def _parse_pitch_token(token: str, line_no: int) -> int | None:
    if token.upper() == "R":
        return None
    try:
        midi = int(token)
    except ValueError:
        midi = None
    if midi is None:
        # Note name with octave, C4 = MIDI 60.
        i = len(token)
        while i > 0 and (token[i - 1].isdigit() or token[i - 1] == "-"):
            i -= 1
        pc = parse_pitch_class(token[:i])
        if pc is None or i == len(token):
            raise MelodyParseError(line_no, "UnknownPitch",
                                   f"cannot read pitch {token!r}")
        try:
            octave = int(token[i:])
        except ValueError:
            raise MelodyParseError(line_no, "UnknownPitch",
                                   f"cannot read pitch {token!r}")
        midi = (octave + 1) * 12 + pc
    if not PITCH_MIN <= midi <= PITCH_MAX:
        raise MelodyParseError(line_no, "PitchOutOfRange",
                               f"{token!r} is MIDI {midi}, outside "
                               f"[{PITCH_MIN}, {PITCH_MAX}]")
    return midi


def parse_melody_doc(text: str) -> Melody:
    """Parse a melody document into a validated 8-measure melody."""
    key: Key | None = None
    measures: list[tuple[NoteEvent, ...]] = []
    current: list[NoteEvent] = []
    cum = 0
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw).strip()
        if not line:
            continue
        last_line = line_no
        if key is None:
            if not line.lower().startswith("key:"):
                raise MelodyParseError(line_no, "MissingKey",
                                       "first line must be 'key: <TONIC> major'")
            fields = line.split(":", 1)[1].split()
            if len(fields) != 2 or fields[1].lower() != "major":
                raise MelodyParseError(line_no, "BadKey",
                                       "only major keys are supported")
            pc = parse_pitch_class(fields[0])
            if pc is None:
                raise MelodyParseError(line_no, "BadKey",
                                       f"unknown tonic {fields[0]!r}")
            key = Key(pc)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MelodyParseError(line_no, "BadLine",
                                   "expected '<pitch|R> <duration>'")
        pitch = _parse_pitch_token(tokens[0], line_no)
        code = tokens[1].lower()
        if code not in DURATION_CODES:
            raise MelodyParseError(line_no, "UnknownDuration",
                                   f"{tokens[1]!r} is not one of "
                                   f"{' '.join(DURATION_CODES)}")
        ticks = DURATION_CODES[code]
        boundary = (cum // TICKS_PER_MEASURE + 1) * TICKS_PER_MEASURE
        if cum + ticks > boundary:
            raise MelodyParseError(line_no, "BarlineStraddle",
                                   f"event crosses the barline of measure "
                                   f"{len(measures) + 1}")
        if len(current) == MAX_EVENTS_PER_MEASURE:
            raise MelodyParseError(line_no, "TooManyEvents",
                                   f"measure {len(measures) + 1} already has "
                                   f"{MAX_EVENTS_PER_MEASURE} events")
        current.append(NoteEvent(pitch, ticks))
        cum += ticks
        if cum == boundary:
            measures.append(tuple(current))
            current = []
    if key is None:
        raise MelodyParseError(max(last_line, 1), "MissingKey", "empty document")
    if cum != MELODY_TICKS or len(measures) != MEASURES_PER_MELODY:
        raise MelodyParseError(last_line, "WrongTotalLength",
                               f"document holds {cum} ticks in "
                               f"{len(measures)} complete measures; need "
                               f"{MELODY_TICKS} ticks in {MEASURES_PER_MELODY}")
    return Melody(tuple(measures), key)


def pitch_name(midi: int) -> str:
    """Sharp-spelled note name with octave, C4 = MIDI 60."""
    return f"{SHARP_NAMES[midi % 12]}{midi // 12 - 1}"


def format_melody_doc(melody: Melody) -> str:
    """Render a melody as a document that parses back to the same melody."""
    lines = [f"key: {SHARP_NAMES[melody.key.tonic]} major"]
    for number, measure in enumerate(melody.measures, start=1):
        lines.append(f"# measure {number}")
        for event in measure:
            token = "R" if event.pitch is None else pitch_name(event.pitch)
            lines.append(f"{token} {TICKS_TO_CODE[event.ticks]}")
    return "\n".join(lines) + "\n"
