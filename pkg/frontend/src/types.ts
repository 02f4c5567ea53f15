export interface MeasurementFields {
  record_id: string;
  value: string;
  timestamp: string;
  entity: string;
  characteristic: string;
  unit: string;
  instrument: string;
  instrument_label: string;
  platform: string;
  platform_label: string;
  latitude: string;
  longitude: string;
  data_collection: string;
  dataset: string;
  source: string;
}

export interface FacetValue {
  value: string;
  count: number;
}

export interface SearchResponse {
  total: number;
  records: MeasurementFields[];
  facets: Record<string, FacetValue[]>;
  facetable: string[];
  offset: number;
  limit: number;
}

export interface ApiError {
  code: string;
  message: string;
  subject: string | null;
}
