// Typed client for the bandnet HTTP API. Payload shapes mirror API.md;
// the dashboard renders these values verbatim and never recomputes metrics.

export interface DatasetInfo {
  id: string;
  name: string;
  n_rois: number;
  n_bands: number;
}

export interface DatasetSummary extends DatasetInfo {
  band_names: string[];
  roi_labels: string[];
  symmetric: boolean;
  has_coords: boolean;
}

export interface ColorPayload {
  h: number;
  s: number;
  l: number;
  css: string;
}

export interface MetricsPayload {
  metric: string;
  n_rois: number;
  n_bands: number;
  values: number[][]; // [roi][band]
  band_min: number[];
  band_max: number[];
}

export interface EdgePayload {
  i: number;
  j: number;
  strength: number;
  endpoints?: [number, number][];
  color?: ColorPayload;
}

export interface EdgesPayload {
  band: number;
  band_name: string;
  range: [number, number];
  count: number;
  edges: EdgePayload[];
}

export interface HistogramPayload {
  band: number;
  band_name: string;
  counts: number[];
  bin_edges: number[];
}

export interface HistogramsPayload {
  target: 'metric' | 'connectivity';
  metric?: string;
  bins: number;
  domain: [number, number];
  shared_max: number;
  histograms: HistogramPayload[];
}

export interface RingSegmentPayload {
  band: number;
  roi: number;
  start_angle: number;
  end_angle: number;
  inner_radius: number;
  outer_radius: number;
  value: number;
  active: boolean;
  color: ColorPayload;
}

export interface SubnetworkArcPayload {
  name: string;
  start_angle: number;
  end_angle: number;
  radius: number;
}

export interface RingPayload {
  metric: string;
  mode: string;
  domain: [number, number];
  r_inner: number;
  ring_thickness: number;
  order: number[];
  segments: RingSegmentPayload[];
  chord_anchors: [number, number][];
  subnetwork_arcs: SubnetworkArcPayload[];
}

export type BrainViewName = 'superior' | 'lateral' | 'posterior';

export interface BrainPayload {
  view: BrainViewName;
  points: [number, number][];
}

export interface ThresholdPayload {
  target: 'metric' | 'connectivity';
  metric: string | null;
  band: number;
  percent: number;
  threshold: number;
  max: number;
  selected_count: number;
}

export interface Task1Payload {
  task: 1;
  metric: string;
  band: number;
  band_name: string;
  roi: number;
  roi_label: string;
  value: number;
}

export type BarSort = 'none' | 'ascending' | 'descending';

export interface SessionFilters {
  metric_ranges: ([number, number] | null)[];
  connectivity_range: [number, number] | null;
  selected_band: number;
}

export interface SubnetworkDef {
  name: string;
  members: number[];
}

export interface SubnetworkConfigPayload {
  name: string;
  subnetworks: SubnetworkDef[];
}

export interface SessionPayload {
  dataset_id: string | null;
  filters: SessionFilters;
  subnetworks: SubnetworkConfigPayload | null;
  bar_sort: BarSort;
}

export interface FiltersBody {
  metric_ranges?: ([number, number] | null)[];
  connectivity_range?: [number, number] | null;
  selected_band?: number;
  bar_sort?: BarSort;
}

export interface EdgesQuery {
  band?: number;
  lo?: number;
  hi?: number;
  subnetworks?: string;
  layout?: 'ring';
  mode?: 'linear' | 'log';
  dynamic?: boolean;
}

export interface RingQuery {
  metric?: string;
  mode?: 'linear' | 'log';
  dynamic?: boolean;
}

export interface ThresholdQuery {
  percent: number;
  target: 'metric' | 'connectivity';
  metric?: string;
  band?: number;
}

export class ApiRequestError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

/** What every view and the dashboard consume; tests substitute a fake. */
export interface Api {
  datasets(): Promise<{ datasets: DatasetInfo[] }>;
  summary(id: string): Promise<DatasetSummary>;
  metrics(id: string, metric?: string): Promise<MetricsPayload>;
  edges(id: string, query?: EdgesQuery): Promise<EdgesPayload>;
  histograms(
    id: string,
    target: 'metric' | 'connectivity',
    opts?: { metric?: string; band?: number; bins?: number },
  ): Promise<HistogramsPayload>;
  ringLayout(id: string, query?: RingQuery): Promise<RingPayload>;
  brainLayout(id: string, view: BrainViewName): Promise<BrainPayload>;
  threshold(id: string, query: ThresholdQuery): Promise<ThresholdPayload>;
  task1(metric?: string): Promise<Task1Payload>;
  session(): Promise<SessionPayload>;
  putFilters(body: FiltersBody): Promise<SessionFilters>;
  putSubnetworks(body: SubnetworkConfigPayload): Promise<SubnetworkConfigPayload>;
}

function toQuery(params: Record<string, unknown>): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== null && value !== '') {
      parts.push(`${encodeURIComponent(key)}=${encodeURIComponent(String(value))}`);
    }
  }
  return parts.length ? `?${parts.join('&')}` : '';
}

export class HttpApi implements Api {
  constructor(private readonly baseUrl: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await fetch(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiRequestError(0, 'network', `service unreachable: ${String(err)}`);
    }
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
      const error = body?.error ?? { code: 'unknown', message: resp.statusText };
      throw new ApiRequestError(resp.status, error.code, error.message);
    }
    return body as T;
  }

  private put<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }

  datasets() {
    return this.request<{ datasets: DatasetInfo[] }>('/datasets');
  }

  summary(id: string) {
    return this.request<DatasetSummary>(`/datasets/${id}/summary`);
  }

  metrics(id: string, metric = 'cc') {
    return this.request<MetricsPayload>(`/datasets/${id}/metrics${toQuery({ metric })}`);
  }

  edges(id: string, query: EdgesQuery = {}) {
    return this.request<EdgesPayload>(`/datasets/${id}/edges${toQuery({ ...query })}`);
  }

  histograms(
    id: string,
    target: 'metric' | 'connectivity',
    opts: { metric?: string; band?: number; bins?: number } = {},
  ) {
    return this.request<HistogramsPayload>(
      `/datasets/${id}/histograms${toQuery({ target, ...opts })}`,
    );
  }

  ringLayout(id: string, query: RingQuery = {}) {
    return this.request<RingPayload>(`/datasets/${id}/layout/ring${toQuery({ ...query })}`);
  }

  brainLayout(id: string, view: BrainViewName) {
    return this.request<BrainPayload>(`/datasets/${id}/layout/brain${toQuery({ view })}`);
  }

  threshold(id: string, query: ThresholdQuery) {
    return this.request<ThresholdPayload>(`/datasets/${id}/threshold${toQuery({ ...query })}`);
  }

  task1(metric = 'cc') {
    return this.request<Task1Payload>(`/tasks/1${toQuery({ metric })}`);
  }

  session() {
    return this.request<SessionPayload>('/session');
  }

  putFilters(body: FiltersBody) {
    return this.put<SessionFilters>('/session/filters', body);
  }

  putSubnetworks(body: SubnetworkConfigPayload) {
    return this.put<SubnetworkConfigPayload>('/session/subnetworks', body);
  }
}

/** Exact value text shown in tooltips: the shortest round-trip decimal,
 * which is byte-identical to the number token in the service's JSON. */
export function formatExactValue(value: number): string {
  return String(value);
}
