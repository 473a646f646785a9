import {
  Frame,
  frameTimes2x2,
  orthonormalize,
  svd2x2,
  dot,
  axpy,
  norm,
} from "./linalg.js";
import { Rng } from "./rng.js";

/**
 * Grand tour over p-D data: a sequence of random 2-D projection frames
 * joined by geodesic paths, so the view rotates at constant speed and
 * stays orthonormal at every rendered frame.
 *
 * Within a segment the path follows the principal angles between the
 * current and target planes; frames are aligned so the rendered basis
 * equals the segment's start basis at t=0 and its target basis at t=1
 * with no within-plane spin.
 */
export class TourState {
  readonly p: number;
  t = 0;
  fps = 60;
  private segment: {
    ga: Frame;
    w: Frame;
    theta: [number, number];
    uT: [number, number, number, number]; // U^T, row-major
    start: Frame;
    target: Frame;
  };
  private rng: Rng;

  constructor(p: number, seed = 1) {
    if (p < 2) throw new Error("tour needs p >= 2");
    this.p = p;
    this.rng = new Rng(seed);
    const start = this.randomFrame();
    this.segment = this.planSegment(start);
  }

  private randomFrame(): Frame {
    const c0 = new Float64Array(this.p);
    const c1 = new Float64Array(this.p);
    for (let i = 0; i < this.p; i++) {
      c0[i] = this.rng.gaussian();
      c1[i] = this.rng.gaussian();
    }
    return orthonormalize([c0, c1]);
  }

  private planSegment(from: Frame) {
    const raw = this.randomFrame();
    // principal decomposition of the rotation between the two planes
    const m00 = dot(from[0], raw[0]);
    const m01 = dot(from[0], raw[1]);
    const m10 = dot(from[1], raw[0]);
    const m11 = dot(from[1], raw[1]);
    const { u, s, v } = svd2x2(m00, m01, m10, m11);
    const ga = frameTimes2x2(from, u);
    const gz = frameTimes2x2(raw, v);
    const theta: [number, number] = [
      Math.acos(Math.min(1, Math.max(-1, s[0]))),
      Math.acos(Math.min(1, Math.max(-1, s[1]))),
    ];
    // per principal pair, the in-plane direction orthogonal to ga
    const w: Frame = [Float64Array.from(gz[0]), Float64Array.from(gz[1])];
    for (const k of [0, 1] as const) {
      axpy(w[k], -Math.cos(theta[k]), ga[k]);
      const wn = norm(w[k]);
      if (wn > 1e-9) {
        for (let i = 0; i < this.p; i++) w[k][i] /= wn;
      } else {
        // planes coincide along this direction; no motion needed
        theta[k] = 0;
        w[k] = Float64Array.from(ga[k]);
      }
    }
    const uT: [number, number, number, number] = [u[0], u[2], u[1], u[3]];
    return {
      ga,
      w,
      theta,
      uT,
      start: from,
      target: frameTimes2x2(gz, uT),
    };
  }

  /** Rendered basis at the current interpolation position. */
  basis(): Frame {
    if (this.t <= 0) return this.segment.start;
    if (this.t >= 1) return this.segment.target;
    const { ga, w, theta, uT } = this.segment;
    const g: Frame = [new Float64Array(this.p), new Float64Array(this.p)];
    for (const k of [0, 1] as const) {
      const ang = theta[k] * this.t;
      const c = Math.cos(ang);
      const s = Math.sin(ang);
      for (let i = 0; i < this.p; i++) {
        g[k][i] = c * ga[k][i] + s * w[k][i];
      }
    }
    return orthonormalize(frameTimes2x2(g, uT));
  }

  get target(): Frame {
    return this.segment.target;
  }

  /**
   * Advance by dt seconds at the given angular speed (radians/s along
   * the widest principal angle); rolls into a fresh segment on arrival.
   */
  step(dt: number, speed = 0.6): Frame {
    const maxTheta = Math.max(this.segment.theta[0], this.segment.theta[1], 1e-3);
    this.t += (dt * speed) / maxTheta;
    if (this.t >= 1) {
      const landed = this.segment.target;
      this.segment = this.planSegment(landed);
      this.t = 0;
      return landed;
    }
    return this.basis();
  }
}
