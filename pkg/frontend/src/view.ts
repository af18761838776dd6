import { renderPianoRoll } from "./pianoroll.js";
import type { SessionStore, ViewState } from "./state.js";

function el(tag: string, attrs: Record<string, string> = {},
            children: (Node | string)[] = []): HTMLElement {
    const node = document.createElement(tag);
    for (const [name, value] of Object.entries(attrs)) {
        node.setAttribute(name, value);
    }
    node.append(...children);
    return node;
}

function button(testId: string, label: string, onClick: () => void,
                disabled = false): HTMLElement {
    const node = el("button", { "data-testid": testId }, [label]);
    if (disabled) {
        node.setAttribute("disabled", "");
    }
    node.addEventListener("click", onClick);
    return node;
}

const DEFAULT_DOC = `key: C major
C4 w
D4 w
E4 w
F4 w
G4 w
F4 w
E4 w
C4 w
`;

function setupPanel(store: SessionStore): HTMLElement {
    const doc = el("textarea", { "data-testid": "melody-doc", rows: "12" },
        [DEFAULT_DOC]) as HTMLTextAreaElement;
    const scheme = el("select", { "data-testid": "scheme" }, [
        el("option", { value: "b" }, ["scheme b (population 3, elitist)"]),
        el("option", { value: "a" }, ["scheme a (population 6, full replacement)"]),
    ]) as HTMLSelectElement;
    const seed = el("input", {
        "data-testid": "seed", type: "number", value: "1",
    }) as HTMLInputElement;
    const start = button("start-session", "Start session", () => {
        void store.createSession(doc.value, scheme.value, Number(seed.value));
    });
    return el("section", { class: "setup" }, [
        el("h2", {}, ["New session"]),
        el("label", {}, ["Base melody", doc]),
        el("label", {}, ["Scheme", scheme]),
        el("label", {}, ["Seed", seed]),
        start,
    ]);
}

function ratingPanel(store: SessionStore, state: ViewState): HTMLElement {
    const generation = state.generation!;
    const cursorLabel = el("p", { "data-testid": "cursor-label" }, [
        `Melody ${state.cursor + 1} of ${generation.size}` +
        ` — generation ${generation.index}`,
    ]);
    const ratings = el("ul", { "data-testid": "rating-list" },
        generation.individuals.map((ind, i) => el("li", {
            "data-testid": `individual-${i}`,
            class: i === state.cursor ? "current" : "",
        }, [`#${i + 1}: ${ind.rating === null ? "unrated" : ind.rating}`])));

    const slider = el("input", {
        "data-testid": "rating-slider", type: "range", min: "0", max: "100",
        step: "1", value: String(state.draftScore),
    }) as HTMLInputElement;
    slider.addEventListener("input", () => {
        store.setDraftScore(Number(slider.value));
    });
    const sliderValue = el("span", { "data-testid": "rating-value" },
        [String(state.draftScore)]);

    const playControls = el("div", { class: "controls" }, [
        state.playing
            ? button("stop", "Stop", () => store.stop())
            : button("play", "Play", () => store.play(),
                state.events === null),
        button("previous", "Previous", () => void store.previous(),
            !store.canGoPrevious),
        button("next", "Next", () => void store.next(), !store.canGoNext),
    ]);
    const rateControls = el("div", { class: "controls" }, [
        slider, sliderValue,
        button("submit-rating", "Rate", () => void store.submitRating()),
    ]);
    const sessionControls = el("div", { class: "controls" }, [
        button("evolve", "Evolve", () => void store.evolve(), !store.allRated),
        button("complete", "Complete", () => void store.complete()),
        button("toggle-notation",
            state.notationVisible ? "Hide notation" : "Show notation",
            () => store.toggleNotation()),
    ]);

    const panel = el("section", { class: "rating" }, [
        cursorLabel, playControls, rateControls, ratings, sessionControls,
    ]);
    if (state.notationVisible) {
        const notation = el("div", { "data-testid": "notation" });
        if (state.events !== null) {
            renderPianoRoll(notation, state.events.voices.base,
                state.events.voices.counterpoint);
        }
        panel.append(notation);
    }
    return panel;
}

function finalPanel(store: SessionStore, state: ViewState): HTMLElement {
    const completed = state.completed!;
    const midiUrl = store.midiUrl();
    return el("section", { "data-testid": "final-screen", class: "final" }, [
        el("h2", {}, ["Final melody"]),
        el("p", {}, [`Individual ${completed.final.id}, ` +
            `rating ${completed.final.rating ?? "unrated"}`]),
        el("pre", { "data-testid": "final-doc" }, [completed.melody_doc]),
        el("a", {
            "data-testid": "midi-link", href: midiUrl ?? "#", download: "final.mid",
        }, ["Download MIDI"]),
    ]);
}

/** Re-render the whole app into root on every state change. */
export function mount(root: HTMLElement, store: SessionStore): void {
    const render = (state: ViewState) => {
        root.replaceChildren();
        root.append(el("h1", {}, ["Counterpoint evolution"]));
        if (state.error !== null) {
            root.append(el("p", { "data-testid": "error", class: "error" },
                [state.error]));
        }
        if (state.completed !== null) {
            root.append(finalPanel(store, state));
        } else if (state.generation === null) {
            root.append(setupPanel(store));
        } else {
            root.append(ratingPanel(store, state));
        }
    };
    store.subscribe(render);
    render(store.getState());
}
