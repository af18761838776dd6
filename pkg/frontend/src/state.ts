import { ApiError, type SessionApi } from "./api.js";
import { Player } from "./audio.js";
import type {
    CompleteResponse,
    GenerationJson,
    SessionJson,
    VoiceEvents,
} from "./types.js";

/**
 * Everything the view needs. The UI holds no evolutionary state of its own:
 * session and generation snapshots come straight from the API, so a reload
 * reconstructs the identical view.
 */
export interface ViewState {
    session: SessionJson | null;
    generation: GenerationJson | null;
    cursor: number;
    draftScore: number;
    notationVisible: boolean;
    events: VoiceEvents | null;
    playing: boolean;
    error: string | null;
    completed: CompleteResponse | null;
    busy: boolean;
}

const INITIAL: ViewState = {
    session: null,
    generation: null,
    cursor: 0,
    draftScore: 50,
    notationVisible: false,   // hidden by default: seeing notation biases raters
    events: null,
    playing: false,
    error: null,
    completed: null,
    busy: false,
};

function describeError(err: unknown): string {
    if (err instanceof ApiError) {
        if (err.body.error === "UnratedIndividual" && err.body.indices) {
            const names = err.body.indices.map((i) => `#${i + 1}`).join(", ");
            return `Rate every melody first (missing: ${names})`;
        }
        return err.body.detail ?? err.body.error;
    }
    return err instanceof Error ? err.message : String(err);
}

export class SessionStore {
    private state: ViewState = { ...INITIAL };
    private listeners = new Set<(state: ViewState) => void>();

    constructor(
        readonly api: SessionApi,
        readonly player: Player = new Player(),
    ) {
        this.player.onEnded = () => this.patch({ playing: false });
    }

    getState(): ViewState {
        return this.state;
    }

    subscribe(listener: (state: ViewState) => void): () => void {
        this.listeners.add(listener);
        return () => this.listeners.delete(listener);
    }

    private patch(partial: Partial<ViewState>): void {
        this.state = { ...this.state, ...partial };
        for (const listener of this.listeners) {
            listener(this.state);
        }
    }

    /** True when every individual in the current generation has a stored rating. */
    get allRated(): boolean {
        const generation = this.state.generation;
        return generation !== null &&
            generation.individuals.every((ind) => ind.rating !== null);
    }

    get canGoPrevious(): boolean {
        return this.state.cursor > 0;
    }

    get canGoNext(): boolean {
        const generation = this.state.generation;
        return generation !== null && this.state.cursor < generation.size - 1;
    }

    async createSession(melodyDoc: string, scheme: string, seed: number): Promise<void> {
        await this.run(async () => {
            const created = await this.api.createSession(melodyDoc, scheme, seed);
            this.patch({
                session: created.session,
                generation: created.generation,
                cursor: 0,
                completed: null,
            });
            await this.fetchEvents();
        });
    }

    /** Rebuild the whole view from the server (used on page reload). */
    async attachSession(id: string): Promise<void> {
        await this.run(async () => {
            const session = await this.api.getSession(id);
            const generation = await this.api.getGeneration(id, session.current_generation);
            this.patch({ session, generation, cursor: 0, completed: null });
            await this.fetchEvents();
        });
    }

    private async fetchEvents(): Promise<void> {
        const { session, generation, cursor } = this.state;
        if (session === null || generation === null) {
            return;
        }
        const events = await this.api.getEvents(session.id, generation.index, cursor);
        this.patch({ events });
    }

    private async run(action: () => Promise<void>): Promise<void> {
        this.patch({ busy: true, error: null });
        try {
            await action();
        } catch (err) {
            this.patch({ error: describeError(err) });
        } finally {
            this.patch({ busy: false });
        }
    }

    private moveCursor(cursor: number): Promise<void> {
        this.stop();
        this.patch({ cursor, events: null, draftScore: this.storedOrDefault(cursor) });
        return this.fetchEvents();
    }

    private storedOrDefault(cursor: number): number {
        const stored = this.state.generation?.individuals[cursor]?.rating;
        return stored ?? 50;
    }

    async next(): Promise<void> {
        if (this.canGoNext) {
            await this.run(() => this.moveCursor(this.state.cursor + 1));
        }
    }

    async previous(): Promise<void> {
        if (this.canGoPrevious) {
            await this.run(() => this.moveCursor(this.state.cursor - 1));
        }
    }

    setDraftScore(score: number): void {
        this.patch({ draftScore: score });
    }

    /** Store the draft rating; the response is the server's view, kept verbatim. */
    async submitRating(): Promise<void> {
        await this.run(async () => {
            const { session, generation, cursor, draftScore } = this.state;
            if (session === null || generation === null) {
                return;
            }
            const updated = await this.api.putRating(
                session.id, generation.index, cursor, draftScore);
            this.patch({ generation: updated });
        });
    }

    async evolve(): Promise<void> {
        await this.run(async () => {
            const session = this.state.session;
            if (session === null) {
                return;
            }
            const generation = await this.api.evolve(session.id);
            // The user lands on the first melody of the new generation.
            this.stop();
            this.patch({ generation, cursor: 0, events: null, draftScore: 50 });
            await this.fetchEvents();
        });
    }

    async complete(): Promise<void> {
        await this.run(async () => {
            const { session, cursor } = this.state;
            if (session === null) {
                return;
            }
            const completed = await this.api.complete(session.id, cursor);
            this.stop();
            this.patch({ completed, session: completed.session });
        });
    }

    toggleNotation(): void {
        this.patch({ notationVisible: !this.state.notationVisible });
    }

    play(): void {
        const events = this.state.events;
        if (events === null) {
            return;
        }
        this.player.play(events);
        this.patch({ playing: true });
    }

    stop(): void {
        this.player.stop();
        if (this.state.playing) {
            this.patch({ playing: false });
        }
    }

    midiUrl(): string | null {
        const { session, generation } = this.state;
        if (session === null || generation === null) {
            return null;
        }
        return this.api.midiUrl(session.id, generation.index, this.state.cursor);
    }
}
