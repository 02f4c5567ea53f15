import { SearchClient } from "./api.js";
import { browserUrlSync, Explorer } from "./app.js";

function requireElement(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id} in index.html`);
  return node;
}

const apiBase = document.documentElement.dataset.apiBase ?? "";
const explorer = new Explorer({
  client: new SearchClient(apiBase),
  facetsEl: requireElement("facets"),
  resultsEl: requireElement("results"),
  urlSync: browserUrlSync(window),
});

window.addEventListener("popstate", () => void explorer.restoreFromUrl());
void explorer.start();
