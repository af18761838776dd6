/** Shapes returned by the session API. */

export interface NoteEventJson {
    pitch: number | null;   // MIDI pitch, null for a rest
    ticks: number;          // duration in 32nd-note ticks
    onset: number;          // start position in ticks from the melody start
}

export interface VoiceEvents {
    bpm: number;
    ticks_per_quarter: number;
    voices: {
        base: NoteEventJson[];
        counterpoint: NoteEventJson[];
    };
}

export interface IndividualJson {
    id: number;
    rating: number | null;
    events: number;
}

export interface GenerationJson {
    index: number;
    size: number;
    individuals: IndividualJson[];
}

export interface SessionJson {
    id: string;
    scheme: string;
    seed: number;
    status: "active" | "complete";
    population_size: number;
    generation_count: number;
    current_generation: number;
    final_individual_id: number | null;
}

export interface CreateSessionResponse {
    session: SessionJson;
    generation: GenerationJson;
}

export interface CompleteResponse {
    session: SessionJson;
    final: IndividualJson;
    melody_doc: string;
}

export interface ApiErrorDetail {
    error: string;
    detail?: string;
    indices?: number[];
    line?: number;
}
