import { ExplorerApi } from "./api.js";
import { mountExplorer } from "./app.js";

const params = new URLSearchParams(window.location.search);
const backend = params.get("backend") ?? "http://127.0.0.1:8642";
const entry = params.get("catalog") ?? "markov";

const root = document.getElementById("app");
if (root) {
  const app = mountExplorer(root, new ExplorerApi(backend));
  const existing = params.get("session");
  if (existing) {
    void app.attach(existing);
  } else {
    void app.start(entry);
  }
}
