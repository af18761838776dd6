"""Standard MIDI file emission for base + counterpoint playback.

Writes format-1 files at 480 PPQ and 120 BPM: a tempo track followed by one
track per voice (base on channel 0, counterpoint on channel 1). One melody
tick (a 32nd note) is 60 MIDI ticks, so every voice track spans exactly
256 * 60 ticks including trailing rests.
"""

from __future__ import annotations

import struct

from .genome import MELODY_TICKS, Melody

PPQ = 480
TEMPO_BPM = 120
MICROSECONDS_PER_QUARTER = 60_000_000 // TEMPO_BPM
MIDI_TICKS_PER_MELODY_TICK = PPQ // 8  # 8 melody ticks per quarter note
VELOCITY = 80

TRACK_SPAN = MELODY_TICKS * MIDI_TICKS_PER_MELODY_TICK


def encode_varlen(value: int) -> bytes:
    """MIDI variable-length quantity, 7 bits per byte, big end first."""
    if value < 0:
        raise ValueError("delta times must be non-negative")
    chunks = [value & 0x7F]
    value >>= 7
    while value:
        chunks.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(chunks))


def _track_chunk(events: list[tuple[int, bytes]]) -> bytes:
    body = b"".join(encode_varlen(delta) + data for delta, data in events)
    return b"MTrk" + struct.pack(">I", len(body)) + body


def _tempo_track() -> bytes:
    events = [
        (0, bytes((0xFF, 0x51, 0x03)) + MICROSECONDS_PER_QUARTER.to_bytes(3, "big")),
        (0, bytes((0xFF, 0x2F, 0x00))),
    ]
    return _track_chunk(events)


def _voice_track(melody: Melody, channel: int) -> bytes:
    events: list[tuple[int, bytes]] = []
    pending = 0
    for event in melody.events():
        span = event.ticks * MIDI_TICKS_PER_MELODY_TICK
        if event.pitch is None:
            pending += span
            continue
        events.append((pending, bytes((0x90 | channel, event.pitch, VELOCITY))))
        events.append((span, bytes((0x80 | channel, event.pitch, 0))))
        pending = 0
    # End-of-track lands on the final barline even after a trailing rest.
    events.append((pending, bytes((0xFF, 0x2F, 0x00))))
    return _track_chunk(events)


def render_midi(base: Melody, counterpoint: Melody | None = None) -> bytes:
    """Render one or two voices as a format-1 standard MIDI file."""
    voices = [base] if counterpoint is None else [base, counterpoint]
    tracks = [_tempo_track()]
    tracks.extend(_voice_track(melody, channel)
                  for channel, melody in enumerate(voices))
    header = b"MThd" + struct.pack(">IHHH", 6, 1, len(tracks), PPQ)
    return header + b"".join(tracks)
