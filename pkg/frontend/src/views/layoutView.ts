import { Bundle, BundlePoint } from "../types.js";
import { SelectionStore } from "../selection.js";

export interface ViewStyle {
  pointSize: number;
  alpha: number;
  dataColor: string;
  highlightColor: string;
}

export const DEFAULT_STYLE: ViewStyle = {
  pointSize: 2.5,
  alpha: 0.65,
  dataColor: "#66B2CC",
  highlightColor: "#9b59b6",
};

interface Mark {
  id: number;
  sx: number;
  sy: number;
  label: string;
}

/**
 * 2-D layout scatter with rectangle brushing. Brushed IDs broadcast to
 * the shared store; highlights from any source restyle the marks.
 */
export class LayoutView {
  readonly canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D | null;
  private points: BundlePoint[];
  private highlighted = new Set<number>();
  private visibleLabels: Set<string> | null = null;
  private marks: Mark[] = [];
  private bounds: { minX: number; maxX: number; minY: number; maxY: number };
  style: ViewStyle;
  private dragStart: [number, number] | null = null;

  constructor(
    container: HTMLElement,
    bundle: Bundle,
    private store: SelectionStore,
    style: Partial<ViewStyle> = {},
    width = 380,
    height = 380,
  ) {
    this.style = { ...DEFAULT_STYLE, ...style };
    this.points = bundle.points;
    this.canvas = container.ownerDocument.createElement("canvas");
    this.canvas.width = width;
    this.canvas.height = height;
    this.canvas.className = "layout-view";
    container.appendChild(this.canvas);
    this.ctx = this.canvas.getContext("2d");
    const xs = this.points.map((p) => p.emb1);
    const ys = this.points.map((p) => p.emb2);
    this.bounds = xs.length
      ? {
          minX: Math.min(...xs),
          maxX: Math.max(...xs),
          minY: Math.min(...ys),
          maxY: Math.max(...ys),
        }
      : { minX: 0, maxX: 1, minY: 0, maxY: 1 };
    store.subscribe((ids) => {
      this.highlighted = new Set(ids);
      this.render();
    });
    this.bindMouse();
    this.render();
  }

  private toScreen(x: number, y: number): [number, number] {
    const { minX, maxX, minY, maxY } = this.bounds;
    const pad = 12;
    const w = this.canvas.width - 2 * pad;
    const h = this.canvas.height - 2 * pad;
    const spanX = maxX - minX || 1;
    const spanY = maxY - minY || 1;
    return [
      pad + ((x - minX) / spanX) * w,
      pad + (1 - (y - minY) / spanY) * h,
    ];
  }

  private toData(sx: number, sy: number): [number, number] {
    const { minX, maxX, minY, maxY } = this.bounds;
    const pad = 12;
    const w = this.canvas.width - 2 * pad;
    const h = this.canvas.height - 2 * pad;
    return [
      minX + ((sx - pad) / w) * (maxX - minX),
      minY + (1 - (sy - pad) / h) * (maxY - minY),
    ];
  }

  setVisibleLabels(labels: Set<string> | null): void {
    this.visibleLabels = labels;
    this.render();
  }

  private visible(pt: BundlePoint): boolean {
    if (this.visibleLabels === null) return true;
    return this.visibleLabels.has(pt.label ?? "");
  }

  /** Select every visible point inside a data-space rectangle. */
  brushDataRect(x0: number, y0: number, x1: number, y1: number): void {
    const [lox, hix] = x0 <= x1 ? [x0, x1] : [x1, x0];
    const [loy, hiy] = y0 <= y1 ? [y0, y1] : [y1, y0];
    const ids = this.points
      .filter(
        (p) =>
          this.visible(p) &&
          p.emb1 >= lox && p.emb1 <= hix &&
          p.emb2 >= loy && p.emb2 <= hiy,
      )
      .map((p) => p.ID);
    this.store.set(ids, "layout");
  }

  private bindMouse(): void {
    this.canvas.addEventListener("mousedown", (ev) => {
      this.dragStart = [ev.offsetX, ev.offsetY];
    });
    this.canvas.addEventListener("mouseup", (ev) => {
      if (!this.dragStart) return;
      const [sx0, sy0] = this.dragStart;
      this.dragStart = null;
      const [x0, y0] = this.toData(sx0, sy0);
      const [x1, y1] = this.toData(ev.offsetX, ev.offsetY);
      if (Math.abs(ev.offsetX - sx0) < 3 && Math.abs(ev.offsetY - sy0) < 3) {
        this.store.clear("layout");
      } else {
        this.brushDataRect(x0, y0, x1, y1);
      }
    });
  }

  getHighlightedIds(): Set<number> {
    const out = new Set<number>();
    for (const m of this.marks) {
      if (this.highlighted.has(m.id)) out.add(m.id);
    }
    return out;
  }

  markCount(): number {
    return this.marks.length;
  }

  render(): void {
    this.marks = [];
    for (const pt of this.points) {
      if (!this.visible(pt)) continue;
      const [sx, sy] = this.toScreen(pt.emb1, pt.emb2);
      this.marks.push({ id: pt.ID, sx, sy, label: pt.label ?? "" });
    }
    if (!this.ctx) return;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    ctx.globalAlpha = this.style.alpha;
    const r = this.style.pointSize;
    for (const m of this.marks) {
      ctx.fillStyle = this.highlighted.has(m.id)
        ? this.style.highlightColor
        : this.style.dataColor;
      ctx.beginPath();
      ctx.arc(m.sx, m.sy, r, 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.globalAlpha = 1;
  }
}
