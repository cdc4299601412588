import { describe, expect, it } from 'vitest';

import { forceLayout, hashSeed, mulberry32 } from '../src/layout.js';

describe('mulberry32', () => {
  it('is deterministic for a given seed', () => {
    const a = mulberry32(42);
    const b = mulberry32(42);
    for (let i = 0; i < 100; i++) {
      expect(a()).toBe(b());
    }
  });

  it('produces values in [0, 1)', () => {
    const rand = mulberry32(7);
    for (let i = 0; i < 1000; i++) {
      const v = rand();
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThan(1);
    }
  });

  it('differs across seeds', () => {
    expect(mulberry32(1)()).not.toBe(mulberry32(2)());
  });
});

describe('hashSeed', () => {
  it('is stable and distinguishes inputs', () => {
    expect(hashSeed('dataset-1')).toBe(hashSeed('dataset-1'));
    expect(hashSeed('dataset-1')).not.toBe(hashSeed('dataset-2'));
  });
});

describe('forceLayout', () => {
  const nodes = ['A', 'B', 'C', 'D', 'E'];
  const edges: [number, number][] = [
    [0, 1],
    [0, 4],
    [1, 2],
    [1, 4],
    [2, 4],
    [3, 4],
  ];

  it('is a pure function of nodes, edges, and seed', () => {
    const first = forceLayout(nodes, edges, hashSeed('ds'));
    const second = forceLayout(nodes, edges, hashSeed('ds'));
    expect(first).toEqual(second);
  });

  it('changes with the seed', () => {
    const a = forceLayout(nodes, edges, 1);
    const b = forceLayout(nodes, edges, 2);
    expect(a).not.toEqual(b);
  });

  it('keeps every node inside the viewport', () => {
    const pos = forceLayout(nodes, edges, 9, { width: 640, height: 420 });
    for (const p of pos) {
      expect(p.x).toBeGreaterThanOrEqual(0);
      expect(p.x).toBeLessThanOrEqual(640);
      expect(p.y).toBeGreaterThanOrEqual(0);
      expect(p.y).toBeLessThanOrEqual(420);
    }
  });

  it('handles empty and singleton graphs', () => {
    expect(forceLayout([], [], 3)).toEqual([]);
    expect(forceLayout(['X'], [], 3)).toEqual([{ x: 320, y: 210 }]);
  });

  it('gives each node a distinct position', () => {
    const pos = forceLayout(nodes, edges, 11);
    const keys = new Set(pos.map((p) => `${p.x.toFixed(6)}:${p.y.toFixed(6)}`));
    expect(keys.size).toBe(nodes.length);
  });
});
