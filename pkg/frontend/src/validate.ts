import { Bundle } from "./types.js";

const isNum = (v: unknown): v is number =>
  typeof v === "number" && Number.isFinite(v);
const isInt = (v: unknown): v is number => isNum(v) && Number.isInteger(v);

/**
 * Structural check of a parsed bundle document. Returns a list of
 * violations; an empty list means the document is safe to render.
 */
export function validateBundle(raw: unknown): string[] {
  const errors: string[] = [];
  if (typeof raw !== "object" || raw === null) {
    return ["bundle is not a JSON object"];
  }
  const doc = raw as Record<string, unknown>;
  if (doc.bundle_version !== 1) {
    errors.push(`unsupported bundle_version ${String(doc.bundle_version)}`);
  }

  const meta = doc.metadata as Record<string, unknown> | undefined;
  if (!meta || typeof meta !== "object") {
    errors.push("missing metadata");
    return errors;
  }
  for (const key of ["n", "p", "m"]) {
    if (!isInt(meta[key])) errors.push(`metadata.${key} must be an integer`);
  }
  const errObj = meta.errors as Record<string, unknown> | undefined;
  if (!errObj || !isNum(errObj.Error) || !isNum(errObj.HBE)) {
    errors.push("metadata.errors must carry numeric Error and HBE");
  }
  const grid = meta.grid as Record<string, unknown> | undefined;
  if (!grid || !isInt(grid.b1) || !isInt(grid.b2) || !isNum(grid.a1)) {
    errors.push("metadata.grid must carry b1, b2, a1");
  }
  if (errors.length > 0) return errors;

  const n = meta.n as number;
  const p = meta.p as number;
  const m = meta.m as number;

  const points = doc.points;
  if (!Array.isArray(points) || points.length !== n) {
    errors.push(`points must be an array of length ${n}`);
  } else {
    points.forEach((pt, i) => {
      if (errors.length > 8) return; // cap the report
      if (
        !pt || !isInt(pt.ID) || !isNum(pt.emb1) || !isNum(pt.emb2) ||
        !isNum(pt.error) || !Array.isArray(pt.x) || pt.x.length !== p ||
        !pt.x.every(isNum)
      ) {
        errors.push(`points[${i}] is malformed`);
      }
    });
  }

  const model = doc.model;
  if (!Array.isArray(model) || model.length !== m) {
    errors.push(`model must be an array of length ${m}`);
  } else {
    model.forEach((v, i) => {
      if (errors.length > 8) return;
      if (
        !v || !isInt(v.h) || !isNum(v.cx) || !isNum(v.cy) ||
        !Array.isArray(v.x) || v.x.length !== p || !v.x.every(isNum)
      ) {
        errors.push(`model[${i}] is malformed`);
      }
    });
  }

  const edges = doc.edges;
  if (!Array.isArray(edges)) {
    errors.push("edges must be an array");
  } else {
    edges.forEach((e, i) => {
      if (errors.length > 8) return;
      if (!e || !isInt(e.from_reindexed) || !isInt(e.to_reindexed)) {
        errors.push(`edges[${i}] is malformed`);
      } else if (
        e.from_reindexed < 1 || e.from_reindexed > m ||
        e.to_reindexed < 1 || e.to_reindexed > m
      ) {
        errors.push(`edges[${i}] indexes outside the model array (1..${m})`);
      }
    });
  }
  return errors;
}

export function parseBundle(raw: unknown): Bundle {
  const errors = validateBundle(raw);
  if (errors.length > 0) {
    throw new Error(`invalid bundle: ${errors.join("; ")}`);
  }
  return raw as Bundle;
}
