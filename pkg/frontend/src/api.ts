import type {
    ApiErrorDetail,
    CompleteResponse,
    CreateSessionResponse,
    GenerationJson,
    SessionJson,
    VoiceEvents,
} from "./types.js";

export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly body: ApiErrorDetail,
    ) {
        super(body.detail ?? body.error ?? `HTTP ${status}`);
    }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the store needs from the backend; ApiClient is the real one. */
export interface SessionApi {
    createSession(melodyDoc: string, scheme: string, seed: number): Promise<CreateSessionResponse>;
    getSession(id: string): Promise<SessionJson>;
    getGeneration(id: string, generation: number): Promise<GenerationJson>;
    putRating(id: string, generation: number, individual: number, score: number): Promise<GenerationJson>;
    evolve(id: string): Promise<GenerationJson>;
    complete(id: string, individual: number): Promise<CompleteResponse>;
    getEvents(id: string, generation: number, individual: number): Promise<VoiceEvents>;
    midiUrl(id: string, generation: number, individual: number): string;
}

/** Thin typed wrapper over the session endpoints. */
export class ApiClient implements SessionApi {
    constructor(
        private readonly baseUrl = "",
        private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(this.baseUrl + path, init);
        const body = await response.json();
        if (!response.ok) {
            const detail: ApiErrorDetail =
                typeof body.detail === "object" && body.detail !== null
                    ? body.detail
                    : { error: String(body.detail ?? response.status) };
            throw new ApiError(response.status, detail);
        }
        return body as T;
    }

    private json(method: string, payload: unknown): RequestInit {
        return {
            method,
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(payload),
        };
    }

    createSession(melodyDoc: string, scheme: string, seed: number): Promise<CreateSessionResponse> {
        return this.request("/sessions", this.json("POST", {
            melody_doc: melodyDoc, scheme, seed,
        }));
    }

    getSession(id: string): Promise<SessionJson> {
        return this.request(`/sessions/${id}`);
    }

    getGeneration(id: string, generation: number): Promise<GenerationJson> {
        return this.request(`/sessions/${id}/generations/${generation}`);
    }

    putRating(id: string, generation: number, individual: number, score: number): Promise<GenerationJson> {
        return this.request(
            `/sessions/${id}/generations/${generation}/individuals/${individual}/rating`,
            this.json("PUT", { score }),
        );
    }

    evolve(id: string): Promise<GenerationJson> {
        return this.request(`/sessions/${id}/evolve`, { method: "POST" });
    }

    complete(id: string, individual: number): Promise<CompleteResponse> {
        return this.request(`/sessions/${id}/complete`, this.json("POST", { individual }));
    }

    getEvents(id: string, generation: number, individual: number): Promise<VoiceEvents> {
        return this.request(`/sessions/${id}/generations/${generation}/individuals/${individual}/events`);
    }

    midiUrl(id: string, generation: number, individual: number): string {
        return `${this.baseUrl}/sessions/${id}/generations/${generation}/individuals/${individual}/midi`;
    }
}
