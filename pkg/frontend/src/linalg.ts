/**
 * Minimal dense linear algebra for p x 2 projection frames.
 *
 * A frame is stored column-major as two length-p Float64Arrays. All
 * routines are allocation-light so they can run once per animation
 * frame over ten-thousand-point clouds.
 */

export type Frame = [Float64Array, Float64Array];

export function dot(a: Float64Array, b: Float64Array): number {
  let s = 0;
  for (let i = 0; i < a.length; i++) s += a[i] * b[i];
  return s;
}

export function norm(a: Float64Array): number {
  return Math.sqrt(dot(a, a));
}

export function scale(a: Float64Array, s: number): Float64Array {
  const out = new Float64Array(a.length);
  for (let i = 0; i < a.length; i++) out[i] = a[i] * s;
  return out;
}

export function axpy(y: Float64Array, alpha: number, x: Float64Array): void {
  for (let i = 0; i < y.length; i++) y[i] += alpha * x[i];
}

/** Modified Gram-Schmidt on two columns; throws on rank deficiency. */
export function orthonormalize(frame: Frame): Frame {
  const u = Float64Array.from(frame[0]);
  const n0 = norm(u);
  if (n0 < 1e-12) throw new Error("degenerate frame column 0");
  for (let i = 0; i < u.length; i++) u[i] /= n0;
  const v = Float64Array.from(frame[1]);
  axpy(v, -dot(u, v), u);
  const n1 = norm(v);
  if (n1 < 1e-12) throw new Error("degenerate frame column 1");
  for (let i = 0; i < v.length; i++) v[i] /= n1;
  return [u, v];
}

/** Largest entry of |B^T B - I|, the orthonormality defect. */
export function orthonormalityDefect(frame: Frame): number {
  const d00 = Math.abs(dot(frame[0], frame[0]) - 1);
  const d11 = Math.abs(dot(frame[1], frame[1]) - 1);
  const d01 = Math.abs(dot(frame[0], frame[1]));
  return Math.max(d00, d11, d01);
}

/**
 * Eigen-decomposition of the symmetric 2x2 [[a, c], [c, b]]: returns
 * the rotation angle of the eigenvector basis and both eigenvalues,
 * largest first.
 */
function symEig2(a: number, b: number, c: number): { angle: number; l1: number; l2: number } {
  const tr2 = (a + b) / 2;
  const disc = Math.sqrt(((a - b) / 2) ** 2 + c * c);
  const angle = 0.5 * Math.atan2(2 * c, a - b);
  return { angle, l1: tr2 + disc, l2: tr2 - disc };
}

export interface Svd2 {
  u: [number, number, number, number]; // row-major 2x2
  s: [number, number];
  v: [number, number, number, number];
}

/** SVD of a 2x2 matrix [[m00, m01], [m10, m11]] via the Gram matrix. */
export function svd2x2(m00: number, m01: number, m10: number, m11: number): Svd2 {
  // M^T M
  const a = m00 * m00 + m10 * m10;
  const b = m01 * m01 + m11 * m11;
  const c = m00 * m01 + m10 * m11;
  const { angle, l1, l2 } = symEig2(a, b, c);
  const cs = Math.cos(angle);
  const sn = Math.sin(angle);
  const v: [number, number, number, number] = [cs, -sn, sn, cs];
  const s1 = Math.sqrt(Math.max(l1, 0));
  const s2 = Math.sqrt(Math.max(l2, 0));
  // u_i = M v_i / s_i, completed orthogonally when s_i underflows
  let u0x = m00 * cs + m01 * sn;
  let u0y = m10 * cs + m11 * sn;
  if (s1 > 1e-300) {
    u0x /= s1;
    u0y /= s1;
  } else {
    u0x = 1;
    u0y = 0;
  }
  let u1x = -m00 * sn + m01 * cs;
  let u1y = -m10 * sn + m11 * cs;
  if (s2 > 1e-12 * Math.max(s1, 1e-300)) {
    u1x /= s2;
    u1y /= s2;
  } else {
    u1x = -u0y;
    u1y = u0x;
  }
  return { u: [u0x, u1x, u0y, u1y], s: [s1, s2], v };
}

/** columns(frame) times a 2x2 row-major matrix: F * R. */
export function frameTimes2x2(frame: Frame, r: [number, number, number, number]): Frame {
  const p = frame[0].length;
  const c0 = new Float64Array(p);
  const c1 = new Float64Array(p);
  for (let i = 0; i < p; i++) {
    c0[i] = frame[0][i] * r[0] + frame[1][i] * r[2];
    c1[i] = frame[0][i] * r[1] + frame[1][i] * r[3];
  }
  return [c0, c1];
}

/** Project n stacked p-vectors through a frame into (x, y) pairs. */
export function projectInto(
  data: Float64Array,
  p: number,
  frame: Frame,
  outX: Float64Array,
  outY: Float64Array,
): void {
  const n = outX.length;
  const c0 = frame[0];
  const c1 = frame[1];
  for (let i = 0; i < n; i++) {
    let x = 0;
    let y = 0;
    const base = i * p;
    for (let j = 0; j < p; j++) {
      const v = data[base + j];
      x += v * c0[j];
      y += v * c1[j];
    }
    outX[i] = x;
    outY[i] = y;
  }
}
