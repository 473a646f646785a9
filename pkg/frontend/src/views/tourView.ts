import { Bundle } from "../types.js";
import { SelectionStore } from "../selection.js";
import { TourState } from "../tour.js";
import { Frame, projectInto } from "../linalg.js";
import { DEFAULT_STYLE, ViewStyle } from "./layoutView.js";

export interface TourStyle extends ViewStyle {
  modelColor: string;
  edgeColor: string;
}

/**
 * Animated grand-tour projection of the p-D data overlaid with the
 * lifted wireframe. Data marks follow the shared selection; model
 * marks and edges are display-only and never enter the selection.
 */
export class TourView {
  readonly canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D | null;
  readonly tour: TourState;
  playing = true;
  style: TourStyle;

  private n: number;
  private m: number;
  private p: number;
  private ids: Int32Array;
  private labels: string[];
  private dataFlat: Float64Array;
  private modelFlat: Float64Array;
  private edges: Array<[number, number]>; // 0-based into model rows
  private highlighted = new Set<number>();
  private visibleLabels: Set<string> | null = null;
  private scaleRadius: number;

  private dataX: Float64Array;
  private dataY: Float64Array;
  private modelX: Float64Array;
  private modelY: Float64Array;
  private lastBasis: Frame;
  private renderedMarks = 0;
  private renderedSegments = 0;

  constructor(
    container: HTMLElement,
    bundle: Bundle,
    private store: SelectionStore,
    style: Partial<TourStyle> = {},
    width = 380,
    height = 380,
    seed = 1,
  ) {
    this.style = {
      ...DEFAULT_STYLE,
      modelColor: "#FF7755",
      edgeColor: "#333333",
      ...style,
    };
    this.n = bundle.points.length;
    this.m = bundle.model.length;
    this.p = bundle.metadata.p;
    this.ids = new Int32Array(this.n);
    this.labels = new Array(this.n);
    this.dataFlat = new Float64Array(this.n * this.p);
    for (let i = 0; i < this.n; i++) {
      const pt = bundle.points[i];
      this.ids[i] = pt.ID;
      this.labels[i] = pt.label ?? "";
      for (let j = 0; j < this.p; j++) this.dataFlat[i * this.p + j] = pt.x[j];
    }
    this.modelFlat = new Float64Array(this.m * this.p);
    for (let i = 0; i < this.m; i++) {
      for (let j = 0; j < this.p; j++) {
        this.modelFlat[i * this.p + j] = bundle.model[i].x[j];
      }
    }
    this.edges = bundle.edges.map((e) => [e.from_reindexed - 1, e.to_reindexed - 1]);

    // projections live inside the max-norm ball, a stable screen scale
    let maxNorm = 1e-12;
    for (let i = 0; i < this.n; i++) {
      let s = 0;
      for (let j = 0; j < this.p; j++) s += this.dataFlat[i * this.p + j] ** 2;
      maxNorm = Math.max(maxNorm, Math.sqrt(s));
    }
    this.scaleRadius = maxNorm;

    this.dataX = new Float64Array(this.n);
    this.dataY = new Float64Array(this.n);
    this.modelX = new Float64Array(this.m);
    this.modelY = new Float64Array(this.m);

    this.canvas = container.ownerDocument.createElement("canvas");
    this.canvas.width = width;
    this.canvas.height = height;
    this.canvas.className = "tour-view";
    container.appendChild(this.canvas);
    this.ctx = this.canvas.getContext("2d");

    this.tour = new TourState(this.p, seed);
    this.lastBasis = this.tour.basis();
    store.subscribe((ids) => {
      this.highlighted = new Set(ids);
      this.render(this.lastBasis);
    });
    this.render(this.lastBasis);
  }

  setVisibleLabels(labels: Set<string> | null): void {
    this.visibleLabels = labels;
    this.render(this.lastBasis);
  }

  pause(): void {
    this.playing = false;
  }

  resume(): void {
    this.playing = true;
  }

  /** Advance the tour (when playing) and redraw. */
  step(dt: number): void {
    if (!this.playing) return;
    this.render(this.tour.step(dt));
  }

  private toScreen(x: number, y: number): [number, number] {
    const half = Math.min(this.canvas.width, this.canvas.height) / 2;
    const s = (half - 10) / this.scaleRadius;
    return [this.canvas.width / 2 + x * s, this.canvas.height / 2 - y * s];
  }

  getHighlightedIds(): Set<number> {
    const out = new Set<number>();
    for (let i = 0; i < this.n; i++) {
      if (this.visibleIndex(i) && this.highlighted.has(this.ids[i])) {
        out.add(this.ids[i]);
      }
    }
    return out;
  }

  private visibleIndex(i: number): boolean {
    if (this.visibleLabels === null) return true;
    return this.visibleLabels.has(this.labels[i]);
  }

  markCount(): number {
    return this.renderedMarks;
  }

  segmentCount(): number {
    return this.renderedSegments;
  }

  /** Current projected data coordinates (for audits and tests). */
  projection(): { x: Float64Array; y: Float64Array } {
    return { x: this.dataX, y: this.dataY };
  }

  currentBasis(): Frame {
    return this.lastBasis;
  }

  render(basis: Frame): void {
    this.lastBasis = basis;
    projectInto(this.dataFlat, this.p, basis, this.dataX, this.dataY);
    projectInto(this.modelFlat, this.p, basis, this.modelX, this.modelY);
    this.renderedMarks = 0;
    this.renderedSegments = this.edges.length;
    for (let i = 0; i < this.n; i++) {
      if (this.visibleIndex(i)) this.renderedMarks += 1;
    }
    this.renderedMarks += this.m;

    if (!this.ctx) return;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);

    ctx.strokeStyle = this.style.edgeColor;
    ctx.globalAlpha = 0.8;
    ctx.lineWidth = 1;
    for (const [a, b] of this.edges) {
      const [x1, y1] = this.toScreen(this.modelX[a], this.modelY[a]);
      const [x2, y2] = this.toScreen(this.modelX[b], this.modelY[b]);
      ctx.beginPath();
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      ctx.stroke();
    }

    ctx.globalAlpha = this.style.alpha;
    const r = this.style.pointSize;
    for (let i = 0; i < this.n; i++) {
      if (!this.visibleIndex(i)) continue;
      const [sx, sy] = this.toScreen(this.dataX[i], this.dataY[i]);
      ctx.fillStyle = this.highlighted.has(this.ids[i])
        ? this.style.highlightColor
        : this.style.dataColor;
      ctx.beginPath();
      ctx.arc(sx, sy, r, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.fillStyle = this.style.modelColor;
    for (let i = 0; i < this.m; i++) {
      const [sx, sy] = this.toScreen(this.modelX[i], this.modelY[i]);
      ctx.beginPath();
      ctx.arc(sx, sy, r + 1, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.globalAlpha = 1;
  }
}
