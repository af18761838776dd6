import { ApiClient } from "./api.js";
import { SessionStore } from "./state.js";
import { mount } from "./view.js";

const root = document.getElementById("app");
if (root === null) {
    throw new Error("missing #app container");
}

const store = new SessionStore(new ApiClient(""));
mount(root, store);

// Reloading mid-session reconstructs the identical view from the API.
const sessionId = new URLSearchParams(window.location.search).get("session");
if (sessionId !== null) {
    void store.attachSession(sessionId);
}
