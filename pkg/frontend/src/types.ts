export interface GridMeta {
  b1: number;
  b2: number;
  a1: number;
  a2: number;
  q: number;
  origin: [number, number];
}

export interface BundleMetadata {
  n: number;
  p: number;
  m: number;
  grid: GridMeta;
  errors: { Error: number; HBE: number };
}

export interface BundlePoint {
  ID: number;
  emb1: number;
  emb2: number;
  x: number[];
  error: number;
  label?: string;
}

export interface BundleModelVertex {
  h: number;
  cx: number;
  cy: number;
  x: number[];
}

export interface BundleEdge {
  from_reindexed: number;
  to_reindexed: number;
}

export interface Bundle {
  bundle_version: number;
  metadata: BundleMetadata;
  points: BundlePoint[];
  model: BundleModelVertex[];
  edges: BundleEdge[];
}
