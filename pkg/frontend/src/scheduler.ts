import type { NoteEventJson } from "./types.js";

export const BPM = 120;
export const TICKS_PER_QUARTER = 8;
/** One melody tick is a 32nd note: 60/120/8 = 62.5 ms. */
export const SECONDS_PER_TICK = 60 / BPM / TICKS_PER_QUARTER;

export interface ScheduledNote {
    frequency: number;
    start: number;      // seconds from playback start
    duration: number;   // seconds
    pitch: number;
}

export function midiToFrequency(midi: number): number {
    return 440 * Math.pow(2, (midi - 69) / 12);
}

/**
 * Map a voice onto absolute-time notes. Rests schedule nothing but their
 * ticks still occupy time because every event carries its onset.
 */
export function scheduleVoice(events: NoteEventJson[], startAt = 0): ScheduledNote[] {
    const notes: ScheduledNote[] = [];
    for (const event of events) {
        if (event.pitch === null) {
            continue;
        }
        notes.push({
            frequency: midiToFrequency(event.pitch),
            start: startAt + event.onset * SECONDS_PER_TICK,
            duration: event.ticks * SECONDS_PER_TICK,
            pitch: event.pitch,
        });
    }
    return notes;
}

/** Playback length in seconds, trailing rests included. */
export function totalDuration(events: NoteEventJson[]): number {
    let end = 0;
    for (const event of events) {
        end = Math.max(end, event.onset + event.ticks);
    }
    return end * SECONDS_PER_TICK;
}
