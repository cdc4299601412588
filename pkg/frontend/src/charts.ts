/**
 * Pure view-model builders for the two chart types. No analysis happens
 * here: series values are passed through verbatim from API responses and
 * only mapped to screen coordinates.
 */

import type { SignalResponse } from './api.js';
import { forceLayout, hashSeed } from './layout.js';
import type { NodePosition } from './layout.js';

export interface ChartSeries {
  label: string;
  cssClass: string;
  values: number[];
  /** SVG polyline points derived from `values`; values stay untouched. */
  points: string;
}

export interface LineChartModel {
  width: number;
  height: number;
  series: ChartSeries[];
  yTicks: { y: number; value: number }[];
}

const CHART_W = 640;
const CHART_H = 260;
const PAD = 36;

export function lineChart(
  series: { label: string; cssClass: string; values: number[] }[]
): LineChartModel {
  const all = series.flatMap((s) => s.values);
  const lo = all.length ? Math.min(...all) : 0;
  const hi = all.length ? Math.max(...all) : 1;
  const span = hi - lo || 1;
  const count = Math.max(...series.map((s) => s.values.length), 2);

  const toX = (i: number) => PAD + (i / (count - 1)) * (CHART_W - 2 * PAD);
  const toY = (v: number) =>
    CHART_H - PAD - ((v - lo) / span) * (CHART_H - 2 * PAD);

  // Ticks at the observed extremes only, so every tick label is a value that
  // actually appears in one of the plotted series.
  const ticks = all.length ? [lo, hi] : [];
  return {
    width: CHART_W,
    height: CHART_H,
    series: series.map((s) => ({
      ...s,
      points: s.values.map((v, i) => `${toX(i)},${toY(v)}`).join(' '),
    })),
    yTicks: ticks.map((value) => ({ y: toY(value), value })),
  };
}

export interface DigraphModel {
  nodes: { name: string; isTarget: boolean; pos: NodePosition }[];
  edges: { from: NodePosition; to: NodePosition }[];
  targetInDegree: number;
}

export function digraphModel(
  digraph: SignalResponse['digraph'],
  datasetId: string
): DigraphModel {
  const names = [digraph.target, ...digraph.indicators];
  const index = new Map(names.map((n, i) => [n, i]));
  const edgeIdx: [number, number][] = digraph.edges.map(([a, b]) => [
    index.get(a)!,
    index.get(b)!,
  ]);
  const pos = forceLayout(names, edgeIdx, hashSeed(`${datasetId}:digraph`), {
    width: 360,
    height: 260,
    iterations: 80,
  });
  return {
    nodes: names.map((name, i) => ({
      name,
      isTarget: name === digraph.target,
      pos: pos[i],
    })),
    edges: edgeIdx.map(([a, b]) => ({ from: pos[a], to: pos[b] })),
    targetInDegree: digraph.edges.filter(([, to]) => to === digraph.target)
      .length,
  };
}
