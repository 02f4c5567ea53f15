import type { FetchLike } from "../src/api.js";
import type { FacetValue, MeasurementFields, SearchResponse } from "../src/types.js";

const BASE = "urn:city:";
const FACETABLE = ["characteristic", "unit", "instrument", "platform", "data_collection"];

function record(
  n: number,
  checkpoint: 1 | 2,
  timestamp: string,
  value: string,
): MeasurementFields {
  return {
    record_id: `rec-${String(n).padStart(3, "0")}`,
    value,
    timestamp,
    entity: "http://purl.org/fortaleza/pmf#Bus",
    characteristic: "http://purl.org/fortaleza/pmf#ArrivalDeparture",
    unit: "http://purl.org/fortaleza/pmf#Binary",
    instrument: `${BASE}checkpoint-${checkpoint}`,
    instrument_label: checkpoint === 1 ? "Dallas/Sobradinho/T F Paiva" : "Pedro Pereira/Imperador/T Goncalves",
    platform: `${BASE}checkpoint-platform-${checkpoint}`,
    platform_label: `Road segment ${checkpoint}`,
    latitude: checkpoint === 1 ? "-3.79486600" : "-3.72791200",
    longitude: checkpoint === 1 ? "-38.61625700" : "-38.53405200",
    data_collection: `${BASE}datacollection-checkpoint-${checkpoint}`,
    dataset: `${BASE}dataset-checkpoint-${checkpoint}`,
    source: `gps-bus-checkpoint-${checkpoint}.ccsv`,
  };
}

/** Fixture day: three arrivals at checkpoint-1, two at checkpoint-2. */
export const FIXTURE_RECORDS: MeasurementFields[] = [
  record(1, 1, "2015-02-01T06:12:00+00:00", "1"),
  record(2, 1, "2015-02-01T06:45:00+00:00", "0"),
  record(3, 2, "2015-02-01T07:03:00+00:00", "1"),
  record(4, 1, "2015-02-01T08:20:00+00:00", "1"),
  record(5, 2, "2015-02-01T09:55:00+00:00", "0"),
];

export const CHECKPOINT_1 = `${BASE}checkpoint-1`;

/** Linear-scan oracle for the expected hit count of a one-field filter. */
export function oracleCount(field: keyof MeasurementFields, value: string): number {
  return FIXTURE_RECORDS.filter((r) => r[field] === value).length;
}

function applyFilters(params: URLSearchParams): MeasurementFields[] {
  let matches = FIXTURE_RECORDS;
  for (const raw of params.getAll("filter")) {
    const sep = raw.indexOf(":");
    const field = raw.slice(0, sep) as keyof MeasurementFields;
    const value = raw.slice(sep + 1);
    matches = matches.filter((r) => r[field] === value);
  }
  const from = params.get("from");
  const to = params.get("to");
  if (from) matches = matches.filter((r) => r.timestamp >= from);
  if (to) matches = matches.filter((r) => r.timestamp < to);
  return matches;
}

function facetCounts(matches: MeasurementFields[], field: string): FacetValue[] {
  const counts = new Map<string, number>();
  for (const r of matches) {
    const value = r[field as keyof MeasurementFields];
    counts.set(value, (counts.get(value) ?? 0) + 1);
  }
  return [...counts.entries()]
    .map(([value, count]) => ({ value, count }))
    .sort((a, b) => b.count - a.count || a.value.localeCompare(b.value));
}

export interface StubServer {
  fetch: FetchLike;
  /** Every /api/search URL received, in order. */
  requests: string[];
  /** When true, the next request fails with a 500 once, then recovers. */
  failNext: boolean;
  /** Delay (resolve hooks) keyed by request index, for stale-response tests. */
  gate: Map<number, Promise<void>>;
}

/** In-memory implementation of GET /api/search over the fixture records. */
export function makeStubServer(): StubServer {
  const server: StubServer = { fetch: undefined as unknown as FetchLike, requests: [], failNext: false, gate: new Map() };
  server.fetch = async (url: string) => {
    const parsed = new URL(url, "http://stub.test");
    if (parsed.pathname !== "/api/search") {
      return { ok: false, status: 404, json: async () => ({ code: "not_found", message: "no such endpoint", subject: parsed.pathname }) };
    }
    const index = server.requests.length;
    server.requests.push(url);
    const hold = server.gate.get(index);
    if (hold) await hold;
    if (server.failNext) {
      server.failNext = false;
      return { ok: false, status: 500, json: async () => ({ code: "internal", message: "stub failure", subject: null }) };
    }
    const params = parsed.searchParams;
    const matches = applyFilters(params).sort((a, b) =>
      a.timestamp.localeCompare(b.timestamp) || a.record_id.localeCompare(b.record_id),
    );
    if (params.get("dir") === "desc") matches.reverse();
    const offset = Number(params.get("offset") ?? "0");
    const limit = Number(params.get("limit") ?? "50");
    const facets: Record<string, FacetValue[]> = {};
    for (const field of params.getAll("facet")) {
      facets[field] = facetCounts(matches, field);
    }
    const body: SearchResponse = {
      total: matches.length,
      records: matches.slice(offset, offset + limit),
      facets,
      facetable: FACETABLE,
      offset,
      limit,
    };
    return { ok: true, status: 200, json: async () => body };
  };
  return server;
}
