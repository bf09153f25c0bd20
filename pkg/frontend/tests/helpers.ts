// Fixture-backed Api stand-in. Every payload is a verbatim response body
// captured from the real service (see scripts/make-fixtures.py), so the
// views are tested against exactly what the server sends.

import type {
  Api,
  BrainPayload,
  BrainViewName,
  DatasetInfo,
  DatasetSummary,
  EdgesPayload,
  EdgesQuery,
  FiltersBody,
  HistogramsPayload,
  MetricsPayload,
  RingPayload,
  SessionFilters,
  SessionPayload,
  SubnetworkConfigPayload,
  Task1Payload,
  ThresholdPayload,
} from '../src/api';
import { ApiRequestError } from '../src/api';

import summaryFixture from './fixtures/summary.json';
import metricsFixture from './fixtures/metrics_cc.json';
import ringFixture from './fixtures/ring.json';
import ringFilteredFixture from './fixtures/ring_filtered.json';
import edgesFixture from './fixtures/edges_band0_top10.json';
import histogramsMetricFixture from './fixtures/histograms_metric.json';
import histogramsConnectivityFixture from './fixtures/histograms_connectivity_band0.json';
import brainSuperior from './fixtures/brain_superior.json';
import brainLateral from './fixtures/brain_lateral.json';
import brainPosterior from './fixtures/brain_posterior.json';
import sessionFixture from './fixtures/session.json';
import task1Fixture from './fixtures/tasks_1.json';
import thresholdMetricFixture from './fixtures/threshold_metric_band0_p10.json';
import thresholdConnectivityFixture from './fixtures/threshold_connectivity_band0_p10.json';
import filtersAfterBrushFixture from './fixtures/filters_after_brush.json';
import overlapErrorFixture from './fixtures/subnetworks_overlap_error.json';

export const fixtures = {
  summary: summaryFixture as unknown as DatasetSummary,
  metrics: metricsFixture as unknown as MetricsPayload,
  ring: ringFixture as unknown as RingPayload,
  ringFiltered: ringFilteredFixture as unknown as RingPayload,
  edges: edgesFixture as unknown as EdgesPayload,
  histogramsMetric: histogramsMetricFixture as unknown as HistogramsPayload,
  histogramsConnectivity: histogramsConnectivityFixture as unknown as HistogramsPayload,
  brains: {
    superior: brainSuperior as unknown as BrainPayload,
    lateral: brainLateral as unknown as BrainPayload,
    posterior: brainPosterior as unknown as BrainPayload,
  },
  session: sessionFixture as unknown as SessionPayload,
  task1: task1Fixture as unknown as Task1Payload,
  thresholdMetric: thresholdMetricFixture as unknown as ThresholdPayload,
  thresholdConnectivity: thresholdConnectivityFixture as unknown as ThresholdPayload,
  filtersAfterBrush: filtersAfterBrushFixture as unknown as SessionFilters,
  overlapError: overlapErrorFixture as { error: { code: string; message: string } },
};

export class FakeApi implements Api {
  putFiltersCalls: FiltersBody[] = [];
  putSubnetworksCalls: SubnetworkConfigPayload[] = [];
  edgesCalls: EdgesQuery[] = [];
  /** Once a metric range is PUT, ring layouts reflect the filtered state. */
  filtered = false;
  /** Set to an endpoint name to make its next call fail. */
  failNext: string | null = null;

  private trip(endpoint: string): void {
    if (this.failNext === endpoint) {
      this.failNext = null;
      throw new ApiRequestError(503, 'unavailable', `${endpoint} is down`);
    }
  }

  async datasets(): Promise<{ datasets: DatasetInfo[] }> {
    this.trip('datasets');
    const { id, name, n_rois, n_bands } = fixtures.summary;
    return { datasets: [{ id, name, n_rois, n_bands }] };
  }

  async summary(): Promise<DatasetSummary> {
    return fixtures.summary;
  }

  async metrics(): Promise<MetricsPayload> {
    return fixtures.metrics;
  }

  async edges(_id?: string, query: EdgesQuery = {}): Promise<EdgesPayload> {
    this.trip('edges');
    this.edgesCalls.push(query);
    return fixtures.edges;
  }

  async histograms(
    _id: string,
    target: 'metric' | 'connectivity',
  ): Promise<HistogramsPayload> {
    return target === 'metric'
      ? fixtures.histogramsMetric
      : fixtures.histogramsConnectivity;
  }

  async ringLayout(): Promise<RingPayload> {
    this.trip('ringLayout');
    return this.filtered ? fixtures.ringFiltered : fixtures.ring;
  }

  async brainLayout(_id: string, view: BrainViewName): Promise<BrainPayload> {
    return fixtures.brains[view];
  }

  async threshold(
    _id: string,
    query: { target: 'metric' | 'connectivity' },
  ): Promise<ThresholdPayload> {
    return query.target === 'metric'
      ? fixtures.thresholdMetric
      : fixtures.thresholdConnectivity;
  }

  async task1(): Promise<Task1Payload> {
    return fixtures.task1;
  }

  async session(): Promise<SessionPayload> {
    return fixtures.session;
  }

  async putFilters(body: FiltersBody): Promise<SessionFilters> {
    this.trip('putFilters');
    this.putFiltersCalls.push(body);
    if (body.metric_ranges?.some((r) => r !== null && r !== undefined)) {
      this.filtered = true;
    }
    return fixtures.filtersAfterBrush;
  }

  async putSubnetworks(body: SubnetworkConfigPayload): Promise<SubnetworkConfigPayload> {
    this.putSubnetworksCalls.push(body);
    // Replays the server's disjointness and membership rules so the editor
    // sees the same rejections the real API produces.
    const seen = new Map<number, string>();
    for (const sub of body.subnetworks) {
      for (const member of sub.members) {
        if (!Number.isInteger(member) || member < 0 || member >= fixtures.summary.n_rois) {
          throw new ApiRequestError(
            400,
            'invalid_subnetworks',
            `subnetwork references unknown ROI: ${member} (dataset has ${fixtures.summary.n_rois})`,
          );
        }
        if (seen.has(member)) {
          throw new ApiRequestError(
            400,
            fixtures.overlapError.error.code,
            fixtures.overlapError.error.message,
          );
        }
        seen.set(member, sub.name);
      }
    }
    return body;
  }
}

/** In-memory Storage for the subnetwork editor tests. */
export class MemoryStorage implements Storage {
  private map = new Map<string, string>();

  get length(): number {
    return this.map.size;
  }

  clear(): void {
    this.map.clear();
  }

  getItem(key: string): string | null {
    return this.map.get(key) ?? null;
  }

  key(index: number): string | null {
    return [...this.map.keys()][index] ?? null;
  }

  removeItem(key: string): void {
    this.map.delete(key);
  }

  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
}
