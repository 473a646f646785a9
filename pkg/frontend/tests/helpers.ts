import { Bundle } from "../src/types.js";

/** Small deterministic bundle: n points on a noisy grid, m model vertices. */
export function makeBundle(n = 12, m = 4, p = 3): Bundle {
  const points = [];
  for (let i = 0; i < n; i++) {
    const emb1 = (i % 4) / 3;
    const emb2 = Math.floor(i / 4) / 3;
    points.push({
      ID: i + 1,
      emb1,
      emb2,
      x: Array.from({ length: p }, (_, j) => Math.sin(i + j) * 2),
      error: i * 0.5,
      label: i % 2 === 0 ? "even" : "odd",
    });
  }
  const model = [];
  for (let i = 0; i < m; i++) {
    model.push({
      h: i + 1,
      cx: i / m,
      cy: 0.5,
      x: Array.from({ length: p }, (_, j) => Math.cos(i + j)),
    });
  }
  const edges = [];
  for (let i = 1; i < m; i++) {
    edges.push({ from_reindexed: i, to_reindexed: i + 1 });
  }
  return {
    bundle_version: 1,
    metadata: {
      n,
      p,
      m,
      grid: { b1: 4, b2: 4, a1: 0.3, a2: 0.26, q: 0.1, origin: [-0.1, -0.1] },
      errors: { Error: 10.0, HBE: 0.5 },
    },
    points,
    model,
    edges,
  };
}
