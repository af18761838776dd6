import { scheduleVoice, totalDuration, type ScheduledNote } from "./scheduler.js";
import type { VoiceEvents } from "./types.js";

/** The slice of AudioContext the player needs; injectable for tests. */
export interface AudioContextLike {
    currentTime: number;
    destination: AudioNode;
    createOscillator(): OscillatorNode;
    createGain(): GainNode;
    close(): Promise<void>;
}

const ATTACK = 0.01;
const RELEASE = 0.04;
const VOICE_GAIN: Record<string, number> = { base: 0.18, counterpoint: 0.22 };
const VOICE_WAVE: Record<string, OscillatorType> = {
    base: "triangle",
    counterpoint: "square",
};

/**
 * Two-voice playback through plain oscillators. A fresh context per play
 * keeps scheduling deterministic; stop() tears the whole context down.
 */
export class Player {
    private context: AudioContextLike | null = null;
    private stopTimer: ReturnType<typeof setTimeout> | null = null;
    onEnded: (() => void) | null = null;

    constructor(
        private readonly createContext: () => AudioContextLike =
            () => new AudioContext(),
    ) {}

    get playing(): boolean {
        return this.context !== null;
    }

    /** Start both voices; returns the playback duration in seconds. */
    play(events: VoiceEvents): number {
        this.stop();
        const context = this.createContext();
        this.context = context;
        const startAt = context.currentTime + 0.05;
        for (const voice of ["base", "counterpoint"] as const) {
            const notes = scheduleVoice(events.voices[voice], startAt);
            this.scheduleNotes(context, notes, VOICE_GAIN[voice] ?? 0.2,
                VOICE_WAVE[voice] ?? "sine");
        }
        const duration = Math.max(totalDuration(events.voices.base),
            totalDuration(events.voices.counterpoint));
        this.stopTimer = setTimeout(() => {
            this.stop();
            this.onEnded?.();
        }, (duration + 0.2) * 1000);
        return duration;
    }

    private scheduleNotes(context: AudioContextLike, notes: ScheduledNote[],
                          level: number, wave: OscillatorType): void {
        for (const note of notes) {
            const oscillator = context.createOscillator();
            const gain = context.createGain();
            oscillator.type = wave;
            oscillator.frequency.value = note.frequency;
            gain.gain.setValueAtTime(0, note.start);
            gain.gain.linearRampToValueAtTime(level, note.start + ATTACK);
            gain.gain.setValueAtTime(level, note.start + note.duration - RELEASE);
            gain.gain.linearRampToValueAtTime(0, note.start + note.duration);
            oscillator.connect(gain);
            gain.connect(context.destination);
            oscillator.start(note.start);
            oscillator.stop(note.start + note.duration);
        }
    }

    stop(): void {
        if (this.stopTimer !== null) {
            clearTimeout(this.stopTimer);
            this.stopTimer = null;
        }
        if (this.context !== null) {
            void this.context.close();
            this.context = null;
        }
    }
}
