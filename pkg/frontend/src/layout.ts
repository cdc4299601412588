/**
 * Deterministic force-directed layout. The RNG is seeded per dataset so the
 * same dataset always starts from the same positions, letting successive
 * thresholds animate smoothly instead of reshuffling the nodes.
 */

export interface NodePosition {
  x: number;
  y: number;
}

/** mulberry32: small, fast, deterministic 32-bit PRNG. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Stable 32-bit hash of a string (FNV-1a), used to seed the layout. */
export function hashSeed(key: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < key.length; i++) {
    h ^= key.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
}

const DEFAULTS: LayoutOptions = { width: 640, height: 420, iterations: 120 };

/**
 * Fruchterman–Reingold style layout over the given nodes and index-pair
 * edges. Pure function of (nodes, edges, seed, options).
 */
export function forceLayout(
  nodes: string[],
  edges: [number, number][],
  seed: number,
  options: Partial<LayoutOptions> = {}
): NodePosition[] {
  const { width, height, iterations } = { ...DEFAULTS, ...options };
  const n = nodes.length;
  if (n === 0) {
    return [];
  }
  const rand = mulberry32(seed);
  const pos: NodePosition[] = nodes.map(() => ({
    x: (rand() - 0.5) * width * 0.8,
    y: (rand() - 0.5) * height * 0.8,
  }));
  if (n === 1) {
    return [{ x: width / 2, y: height / 2 }];
  }

  const area = width * height;
  const k = Math.sqrt(area / n);
  const disp: NodePosition[] = nodes.map(() => ({ x: 0, y: 0 }));

  for (let iter = 0; iter < iterations; iter++) {
    const temp = (width / 10) * (1 - iter / iterations);
    for (let i = 0; i < n; i++) {
      disp[i].x = 0;
      disp[i].y = 0;
    }
    // Repulsion between every pair.
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-9) {
          dx = 1e-4 * (i - j);
          dy = 1e-4;
          dist = Math.hypot(dx, dy);
        }
        const force = (k * k) / dist;
        disp[i].x += (dx / dist) * force;
        disp[i].y += (dy / dist) * force;
        disp[j].x -= (dx / dist) * force;
        disp[j].y -= (dy / dist) * force;
      }
    }
    // Attraction along edges.
    for (const [a, b] of edges) {
      const dx = pos[a].x - pos[b].x;
      const dy = pos[a].y - pos[b].y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-9);
      const force = (dist * dist) / k;
      disp[a].x -= (dx / dist) * force;
      disp[a].y -= (dy / dist) * force;
      disp[b].x += (dx / dist) * force;
      disp[b].y += (dy / dist) * force;
    }
    for (let i = 0; i < n; i++) {
      const d = Math.max(Math.hypot(disp[i].x, disp[i].y), 1e-9);
      pos[i].x += (disp[i].x / d) * Math.min(d, temp);
      pos[i].y += (disp[i].y / d) * Math.min(d, temp);
    }
  }

  // Fit into the viewport with a margin.
  const margin = 40;
  const xs = pos.map((p) => p.x);
  const ys = pos.map((p) => p.y);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  return pos.map((p) => ({
    x: margin + ((p.x - minX) / spanX) * (width - 2 * margin),
    y: margin + ((p.y - minY) / spanY) * (height - 2 * margin),
  }));
}
