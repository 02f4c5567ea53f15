import { hasFilter, localName, pageCount } from "./state.js";
import type { ExplorerState } from "./state.js";
import type { SearchResponse } from "./types.js";

export interface Handlers {
  onToggleFilter(field: string, value: string): void;
  onPage(page: number): void;
  onRetry(): void;
}

const RESULT_COLUMNS: Array<{ header: string; field: keyof SearchResponse["records"][number] }> = [
  { header: "Timestamp", field: "timestamp" },
  { header: "Value", field: "value" },
  { header: "Characteristic", field: "characteristic" },
  { header: "Unit", field: "unit" },
  { header: "Instrument", field: "instrument_label" },
  { header: "Platform", field: "platform_label" },
];

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/**
 * Facet panel: one section per facetable field, each value a clickable row
 * with the count reported by the API. Active selections are marked and
 * clicking them again removes the filter.
 */
export function renderFacets(
  container: HTMLElement,
  result: SearchResponse,
  state: ExplorerState,
  handlers: Handlers,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  for (const field of result.facetable) {
    const section = el(doc, "section", "facet-field");
    section.dataset.field = field;
    section.appendChild(el(doc, "h3", "facet-title", field.replace(/_/g, " ")));
    const values = result.facets[field] ?? [];
    if (values.length === 0) {
      section.appendChild(el(doc, "p", "facet-empty", "no values"));
    } else {
      const list = el(doc, "ul", "facet-values");
      for (const { value, count } of values) {
        const item = el(doc, "li");
        const button = el(doc, "button", "facet-value");
        button.type = "button";
        button.dataset.field = field;
        button.dataset.value = value;
        button.title = value;
        if (hasFilter(state, field, value)) {
          button.classList.add("active");
        }
        button.appendChild(el(doc, "span", "facet-label", localName(value)));
        button.appendChild(el(doc, "span", "facet-count", String(count)));
        button.addEventListener("click", () => handlers.onToggleFilter(field, value));
        item.appendChild(button);
        list.appendChild(item);
      }
      section.appendChild(list);
    }
    container.appendChild(section);
  }
}

/** Results panel: paged table plus prev/next controls honoring the total. */
export function renderResults(
  container: HTMLElement,
  result: SearchResponse,
  state: ExplorerState,
  handlers: Handlers,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  const summary = el(doc, "p", "results-summary");
  summary.textContent = `${result.total} measurement${result.total === 1 ? "" : "s"}`;
  container.appendChild(summary);

  if (result.total === 0) {
    container.appendChild(el(doc, "p", "results-empty", "No measurements match the current filters."));
    return;
  }

  const table = el(doc, "table", "results-table");
  const head = el(doc, "thead");
  const headRow = el(doc, "tr");
  for (const column of RESULT_COLUMNS) {
    headRow.appendChild(el(doc, "th", undefined, column.header));
  }
  head.appendChild(headRow);
  table.appendChild(head);

  const body = el(doc, "tbody");
  for (const record of result.records) {
    const row = el(doc, "tr", "result-row");
    row.dataset.recordId = record.record_id;
    for (const column of RESULT_COLUMNS) {
      const cell = el(doc, "td");
      const raw = record[column.field];
      if (column.field === "characteristic" || column.field === "unit") {
        cell.textContent = localName(raw);
        cell.title = raw;
      } else {
        cell.textContent = raw;
      }
      row.appendChild(cell);
    }
    body.appendChild(row);
  }
  table.appendChild(body);
  container.appendChild(table);

  const pages = pageCount(result.total, state.limit);
  const pager = el(doc, "nav", "pager");
  const prev = el(doc, "button", "pager-prev", "Previous");
  prev.type = "button";
  prev.disabled = state.page === 0;
  prev.addEventListener("click", () => handlers.onPage(state.page - 1));
  const label = el(doc, "span", "pager-label", `Page ${state.page + 1} of ${pages}`);
  const next = el(doc, "button", "pager-next", "Next");
  next.type = "button";
  next.disabled = state.page >= pages - 1;
  next.addEventListener("click", () => handlers.onPage(state.page + 1));
  pager.append(prev, label, next);
  container.appendChild(pager);
}

/** Inline error with a retry button, shown in place of either panel. */
export function renderError(container: HTMLElement, message: string, handlers: Handlers): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const box = el(doc, "div", "error-box");
  box.appendChild(el(doc, "p", "error-message", message));
  const retry = el(doc, "button", "error-retry", "Retry");
  retry.type = "button";
  retry.addEventListener("click", () => handlers.onRetry());
  box.appendChild(retry);
  container.appendChild(box);
}
