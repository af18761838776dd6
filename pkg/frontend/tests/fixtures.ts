import type { AudioContextLike } from "../src/audio.js";
import type {
    GenerationJson,
    NoteEventJson,
    SessionJson,
    VoiceEvents,
} from "../src/types.js";

/** 8 whole notes: 256 ticks. */
export function wholeNoteVoice(pitch: number): NoteEventJson[] {
    return Array.from({ length: 8 }, (_, i) => ({
        pitch, ticks: 32, onset: i * 32,
    }));
}

/** Rest + half note per measure: rests advance time without sounding. */
export function restNoteVoice(pitch: number): NoteEventJson[] {
    const events: NoteEventJson[] = [];
    for (let measure = 0; measure < 8; measure += 1) {
        events.push({ pitch: null, ticks: 16, onset: measure * 32 });
        events.push({ pitch, ticks: 16, onset: measure * 32 + 16 });
    }
    return events;
}

export function fixtureEvents(): VoiceEvents {
    return {
        bpm: 120,
        ticks_per_quarter: 8,
        voices: {
            base: wholeNoteVoice(60),
            counterpoint: restNoteVoice(67),
        },
    };
}

export interface ScheduledCall {
    frequency: number;
    start: number;
    stop: number;
}

/** Records oscillator scheduling instead of making sound. */
export class FakeAudioContext implements AudioContextLike {
    currentTime = 0;
    destination = {} as AudioNode;
    scheduled: ScheduledCall[] = [];
    closed = false;

    createOscillator(): OscillatorNode {
        const call: ScheduledCall = { frequency: 0, start: 0, stop: 0 };
        this.scheduled.push(call);
        return {
            type: "sine",
            frequency: { set value(v: number) { call.frequency = v; } },
            connect: () => undefined,
            start: (when: number) => { call.start = when; },
            stop: (when: number) => { call.stop = when; },
        } as unknown as OscillatorNode;
    }

    createGain(): GainNode {
        return {
            gain: {
                setValueAtTime: () => undefined,
                linearRampToValueAtTime: () => undefined,
            },
            connect: () => undefined,
        } as unknown as GainNode;
    }

    close(): Promise<void> {
        this.closed = true;
        return Promise.resolve();
    }
}

/**
 * In-memory stand-in for the session backend, served through a fetch
 * stub so the real ApiClient and its URL layout are exercised. Every
 * request URL is recorded for network-trace assertions.
 */
export class FakeServer {
    requests: string[] = [];
    private ratings: (number | null)[] = [null, null, null];
    private generationIndex = 0;
    private status: "active" | "complete" = "active";
    private finalId: number | null = null;
    private nextId = 3;
    private ids = [0, 1, 2];

    get fetch(): (input: string, init?: RequestInit) => Promise<Response> {
        return (input, init) => this.handle(input, init);
    }

    private json(body: unknown, status = 200): Promise<Response> {
        return Promise.resolve(new Response(JSON.stringify(body), {
            status,
            headers: { "Content-Type": "application/json" },
        }));
    }

    private sessionJson(): SessionJson {
        return {
            id: "s1",
            scheme: "b",
            seed: 1,
            status: this.status,
            population_size: 3,
            generation_count: this.generationIndex + 1,
            current_generation: this.generationIndex,
            final_individual_id: this.finalId,
        };
    }

    private generationJson(): GenerationJson {
        return {
            index: this.generationIndex,
            size: 3,
            individuals: this.ratings.map((rating, i) => ({
                id: this.ids[i] ?? i,
                rating,
                events: 8,
            })),
        };
    }

    private handle(url: string, init?: RequestInit): Promise<Response> {
        this.requests.push(`${init?.method ?? "GET"} ${url}`);
        if (url === "/sessions" && init?.method === "POST") {
            return this.json({
                session: this.sessionJson(),
                generation: this.generationJson(),
            }, 201);
        }
        if (/^\/sessions\/s1$/.test(url)) {
            return this.json(this.sessionJson());
        }
        if (/^\/sessions\/s1\/generations\/\d+$/.test(url)) {
            return this.json(this.generationJson());
        }
        const rating = url.match(
            /^\/sessions\/s1\/generations\/(\d+)\/individuals\/(\d+)\/rating$/);
        if (rating !== null && init?.method === "PUT") {
            const body = JSON.parse(String(init.body)) as { score: number };
            this.ratings[Number(rating[2])] = body.score;
            return this.json(this.generationJson());
        }
        if (/\/evolve$/.test(url) && init?.method === "POST") {
            const missing = this.ratings
                .map((r, i) => (r === null ? i : -1))
                .filter((i) => i >= 0);
            if (missing.length > 0) {
                return this.json({
                    detail: { error: "UnratedIndividual", indices: missing },
                }, 409);
            }
            this.generationIndex += 1;
            this.ratings = [null, null, null];
            this.ids = this.ids.map(() => this.nextId++);
            return this.json(this.generationJson());
        }
        if (/\/complete$/.test(url) && init?.method === "POST") {
            const body = JSON.parse(String(init?.body)) as { individual: number };
            this.status = "complete";
            this.finalId = this.ids[body.individual] ?? body.individual;
            return this.json({
                session: this.sessionJson(),
                final: {
                    id: this.finalId,
                    rating: this.ratings[body.individual] ?? null,
                    events: 8,
                },
                melody_doc: "key: C major\n" + "C4 w\n".repeat(8),
            });
        }
        if (/\/individuals\/\d+\/events$/.test(url)) {
            return this.json(fixtureEvents());
        }
        return this.json({ detail: { error: "UnknownPath" } }, 404);
    }
}

/** Let queued promise callbacks (store actions, fetches) settle. */
export async function flush(): Promise<void> {
    for (let i = 0; i < 8; i += 1) {
        await new Promise((resolve) => { setTimeout(resolve, 0); });
    }
}
