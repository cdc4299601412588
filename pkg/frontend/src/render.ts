/**
 * Thin DOM/SVG rendering layer. Every numeric element carries a `data-raw`
 * attribute holding the exact API value as a string, so tests (and curious
 * humans) can trace each number on screen back to a response field.
 */

import type { GraphResponse, LagsResponse } from './api.js';
import type { DigraphModel, LineChartModel } from './charts.js';
import { forceLayout, hashSeed } from './layout.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  return node;
}

/** A numeric span: display text is formatted, data-raw is the exact value. */
export function numeric(value: number, digits = 4): HTMLSpanElement {
  return el(
    'span',
    { class: 'numeric', 'data-raw': String(value) },
    value.toFixed(digits)
  );
}

export function clear(node: Element): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

export function renderNotice(container: Element, message: string | null): void {
  clear(container);
  if (message !== null) {
    container.appendChild(el('p', { class: 'notice' }, message));
  }
}

export function renderGraph(
  container: Element,
  graph: GraphResponse,
  datasetId: string
): void {
  clear(container);
  const width = 640;
  const height = 420;
  const pos = forceLayout(graph.nodes, graph.edges, hashSeed(datasetId), {
    width,
    height,
  });
  const selected = new Set(graph.selected);
  const svg = svgEl('svg', {
    viewBox: `0 0 ${width} ${height}`,
    class: 'graph-view',
    role: 'img',
  });
  for (const [a, b] of graph.edges) {
    svg.appendChild(
      svgEl('line', {
        x1: String(pos[a].x),
        y1: String(pos[a].y),
        x2: String(pos[b].x),
        y2: String(pos[b].y),
        class: 'graph-edge',
      })
    );
  }
  graph.nodes.forEach((name, i) => {
    const cls = selected.has(name) ? 'graph-node selected' : 'graph-node';
    const g = svgEl('g', { class: cls, 'data-ticker': name });
    g.appendChild(
      svgEl('circle', {
        cx: String(pos[i].x),
        cy: String(pos[i].y),
        r: '14',
      })
    );
    const label = svgEl('text', {
      x: String(pos[i].x),
      y: String(pos[i].y + 4),
      'text-anchor': 'middle',
    });
    label.textContent = name;
    g.appendChild(label);
    svg.appendChild(g);
  });
  container.appendChild(svg);
}

export function renderLineChart(
  container: Element,
  model: LineChartModel
): void {
  clear(container);
  const svg = svgEl('svg', {
    viewBox: `0 0 ${model.width} ${model.height}`,
    class: 'line-chart',
    role: 'img',
  });
  for (const tick of model.yTicks) {
    svg.appendChild(
      svgEl('line', {
        x1: '36',
        x2: String(model.width - 36),
        y1: String(tick.y),
        y2: String(tick.y),
        class: 'gridline',
      })
    );
    const label = svgEl('text', {
      x: '4',
      y: String(tick.y + 4),
      class: 'tick-label',
      'data-raw': String(tick.value),
    });
    label.textContent = tick.value.toFixed(3);
    svg.appendChild(label);
  }
  for (const series of model.series) {
    svg.appendChild(
      svgEl('polyline', {
        points: series.points,
        class: `chart-line ${series.cssClass}`,
        fill: 'none',
        'data-label': series.label,
        'data-values': JSON.stringify(series.values),
      })
    );
  }
  container.appendChild(svg);
  const legend = el('div', { class: 'legend' });
  for (const series of model.series) {
    legend.appendChild(
      el('span', { class: `legend-item ${series.cssClass}` }, series.label)
    );
  }
  container.appendChild(legend);
}

export function renderLagTable(container: Element, lags: LagsResponse): void {
  clear(container);
  const table = el('table', { class: 'lag-table' });
  const head = el('tr');
  for (const title of ['Indicator', 'Lag (days)', 'Correlation']) {
    head.appendChild(el('th', {}, title));
  }
  table.appendChild(head);
  for (const rel of lags.relationships) {
    const row = el('tr');
    row.appendChild(el('td', {}, rel.indicator));
    const lagCell = el('td');
    lagCell.appendChild(numeric(rel.lag, 0));
    row.appendChild(lagCell);
    const corrCell = el('td');
    corrCell.appendChild(numeric(rel.correlation));
    row.appendChild(corrCell);
    table.appendChild(row);
  }
  container.appendChild(table);
}

export function renderDigraph(container: Element, model: DigraphModel): void {
  clear(container);
  const svg = svgEl('svg', {
    viewBox: '0 0 360 260',
    class: 'digraph-view',
    role: 'img',
  });
  const defs = svgEl('defs');
  const marker = svgEl('marker', {
    id: 'arrowhead',
    markerWidth: '8',
    markerHeight: '6',
    refX: '20',
    refY: '3',
    orient: 'auto',
  });
  marker.appendChild(svgEl('path', { d: 'M0,0 L8,3 L0,6 Z' }));
  defs.appendChild(marker);
  svg.appendChild(defs);
  for (const edge of model.edges) {
    svg.appendChild(
      svgEl('line', {
        x1: String(edge.from.x),
        y1: String(edge.from.y),
        x2: String(edge.to.x),
        y2: String(edge.to.y),
        class: 'digraph-edge',
        'marker-end': 'url(#arrowhead)',
      })
    );
  }
  for (const node of model.nodes) {
    const g = svgEl('g', {
      class: node.isTarget ? 'digraph-node target' : 'digraph-node',
      'data-ticker': node.name,
    });
    g.appendChild(
      svgEl('circle', {
        cx: String(node.pos.x),
        cy: String(node.pos.y),
        r: '12',
      })
    );
    const label = svgEl('text', {
      x: String(node.pos.x),
      y: String(node.pos.y + 4),
      'text-anchor': 'middle',
    });
    label.textContent = node.name;
    g.appendChild(label);
    svg.appendChild(g);
  }
  container.appendChild(svg);
  const caption = el('p', { class: 'digraph-caption' });
  caption.append('Target in-degree: ');
  const deg = el(
    'span',
    { class: 'numeric', 'data-raw': String(model.targetInDegree) },
    String(model.targetInDegree)
  );
  caption.appendChild(deg);
  container.appendChild(caption);
}
