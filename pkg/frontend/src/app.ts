import { SearchClient } from "./api.js";
import { renderError, renderFacets, renderResults } from "./render.js";
import type { Handlers } from "./render.js";
import {
  searchParams,
  setPage,
  stateFromQuery,
  stateToQuery,
  toggleFilter,
} from "./state.js";
import type { ExplorerState } from "./state.js";
import type { SearchResponse } from "./types.js";

/** Minimal slice of the History API so tests can substitute a fake. */
export interface UrlSync {
  read(): string;
  write(query: string): void;
}

export function browserUrlSync(win: Window): UrlSync {
  return {
    read: () => win.location.search.replace(/^\?/, ""),
    write: (query) => {
      const url = query ? `${win.location.pathname}?${query}` : win.location.pathname;
      win.history.pushState(null, "", url);
    },
  };
}

export interface ExplorerOptions {
  client: SearchClient;
  facetsEl: HTMLElement;
  resultsEl: HTMLElement;
  urlSync: UrlSync;
  /** Facetable fields, if already known; otherwise discovered from the first response. */
  facetable?: string[];
}

/**
 * Wires state, API client and rendering together. All mutations funnel
 * through update(), which writes the URL, issues exactly one search
 * request, and repaints both panels when the response arrives. A response
 * belonging to a superseded request is discarded.
 */
export class Explorer {
  state: ExplorerState;
  lastResponse: SearchResponse | null = null;

  private readonly client: SearchClient;
  private readonly facetsEl: HTMLElement;
  private readonly resultsEl: HTMLElement;
  private readonly urlSync: UrlSync;
  private facetable: string[];
  private sequence = 0;
  private readonly handlers: Handlers;

  constructor(options: ExplorerOptions) {
    this.client = options.client;
    this.facetsEl = options.facetsEl;
    this.resultsEl = options.resultsEl;
    this.urlSync = options.urlSync;
    this.facetable = options.facetable ?? [];
    this.state = stateFromQuery(this.urlSync.read());
    this.handlers = {
      onToggleFilter: (field, value) => this.update(toggleFilter(this.state, field, value)),
      onPage: (page) => this.update(setPage(this.state, page)),
      onRetry: () => void this.refresh(),
    };
  }

  /** Initial load; discovers facetable fields if they were not supplied. */
  async start(): Promise<void> {
    if (this.facetable.length === 0) {
      const probe = await this.client.search(searchParams(this.state, []));
      this.facetable = probe.facetable;
    }
    await this.refresh();
  }

  /** Apply externally navigated state (e.g. popstate) without pushing a URL. */
  async restoreFromUrl(): Promise<void> {
    this.state = stateFromQuery(this.urlSync.read());
    await this.refresh();
  }

  private async update(next: ExplorerState): Promise<void> {
    this.state = next;
    this.urlSync.write(stateToQuery(next));
    await this.refresh();
  }

  private async refresh(): Promise<void> {
    const ticket = ++this.sequence;
    let response: SearchResponse;
    try {
      response = await this.client.search(searchParams(this.state, this.facetable));
    } catch (error) {
      if (ticket !== this.sequence) return;
      const message = error instanceof Error ? error.message : String(error);
      renderError(this.facetsEl, message, this.handlers);
      renderError(this.resultsEl, message, this.handlers);
      return;
    }
    if (ticket !== this.sequence) return;
    this.lastResponse = response;
    this.facetable = response.facetable;
    renderFacets(this.facetsEl, response, this.state, this.handlers);
    renderResults(this.resultsEl, response, this.state, this.handlers);
  }
}
