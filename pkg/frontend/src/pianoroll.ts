import type { NoteEventJson } from "./types.js";

const PITCH_MIN = 48;
const PITCH_MAX = 83;
const TOTAL_TICKS = 256;

/**
 * Draw both voices as SVG rectangles, one row per semitone. Only called
 * while the notation panel is visible.
 */
export function renderPianoRoll(container: HTMLElement,
                                base: NoteEventJson[],
                                counterpoint: NoteEventJson[]): void {
    const width = 768;
    const rowHeight = 4;
    const height = (PITCH_MAX - PITCH_MIN + 1) * rowHeight;
    const xScale = width / TOTAL_TICKS;

    const rect = (event: NoteEventJson, cssClass: string): string => {
        if (event.pitch === null) {
            return "";
        }
        const x = event.onset * xScale;
        const y = (PITCH_MAX - event.pitch) * rowHeight;
        const w = Math.max(1, event.ticks * xScale - 1);
        return `<rect class="${cssClass}" x="${x}" y="${y}" ` +
            `width="${w}" height="${rowHeight - 1}"></rect>`;
    };

    const barlines = Array.from({ length: 9 }, (_, i) =>
        `<line class="barline" x1="${i * 32 * xScale}" y1="0" ` +
        `x2="${i * 32 * xScale}" y2="${height}"></line>`).join("");
    const cells = [
        ...base.map((event) => rect(event, "roll-base")),
        ...counterpoint.map((event) => rect(event, "roll-counterpoint")),
    ].join("");

    container.innerHTML =
        `<svg viewBox="0 0 ${width} ${height}" class="piano-roll" ` +
        `role="img" aria-label="piano roll">${barlines}${cells}</svg>`;
}
