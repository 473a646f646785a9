import { Bundle, BundlePoint } from "../types.js";
import { SelectionStore } from "../selection.js";
import { DEFAULT_STYLE, ViewStyle } from "./layoutView.js";

interface Bar {
  lo: number;
  hi: number;       // interval [lo, hi); the last bar closes at hi
  ids: number[];
  x: number;
  w: number;
  height01: number; // fraction of the tallest bar
}

/**
 * Histogram of per-point model error. Clicking or dragging across bars
 * selects exactly the points whose error falls in the covered
 * interval; highlights show the selected share of each bar.
 */
export class ResidualView {
  readonly canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D | null;
  private points: BundlePoint[];
  private bars: Bar[] = [];
  private highlighted = new Set<number>();
  private visibleLabels: Set<string> | null = null;
  style: ViewStyle;
  readonly binCount: number;
  private dragStartBar: number | null = null;

  constructor(
    container: HTMLElement,
    bundle: Bundle,
    private store: SelectionStore,
    style: Partial<ViewStyle> = {},
    width = 380,
    height = 380,
    binCount?: number,
  ) {
    this.style = { ...DEFAULT_STYLE, ...style };
    this.points = bundle.points;
    this.binCount =
      binCount ?? Math.max(5, Math.min(40, Math.ceil(Math.sqrt(this.points.length))));
    this.canvas = container.ownerDocument.createElement("canvas");
    this.canvas.width = width;
    this.canvas.height = height;
    this.canvas.className = "residual-view";
    container.appendChild(this.canvas);
    this.ctx = this.canvas.getContext("2d");
    store.subscribe((ids) => {
      this.highlighted = new Set(ids);
      this.render();
    });
    this.bindMouse();
    this.rebin();
    this.render();
  }

  setVisibleLabels(labels: Set<string> | null): void {
    this.visibleLabels = labels;
    this.rebin();
    this.render();
  }

  private visible(pt: BundlePoint): boolean {
    if (this.visibleLabels === null) return true;
    return this.visibleLabels.has(pt.label ?? "");
  }

  private rebin(): void {
    const pts = this.points.filter((p) => this.visible(p));
    const errors = pts.map((p) => p.error);
    const lo = errors.length ? Math.min(...errors) : 0;
    const hi = errors.length ? Math.max(...errors) : 1;
    const span = hi - lo || 1;
    const k = this.binCount;
    const pad = 12;
    const barW = (this.canvas.width - 2 * pad) / k;
    this.bars = [];
    for (let i = 0; i < k; i++) {
      this.bars.push({
        lo: lo + (i * span) / k,
        hi: lo + ((i + 1) * span) / k,
        ids: [],
        x: pad + i * barW,
        w: barW,
        height01: 0,
      });
    }
    for (const pt of pts) {
      let idx = Math.floor(((pt.error - lo) / span) * k);
      if (idx >= k) idx = k - 1; // the maximum closes the last bar
      if (idx < 0) idx = 0;
      this.bars[idx].ids.push(pt.ID);
    }
    const tallest = Math.max(1, ...this.bars.map((b) => b.ids.length));
    for (const bar of this.bars) bar.height01 = bar.ids.length / tallest;
  }

  /** Error interval covered by one bar: [lo, hi), last bar inclusive. */
  barInterval(index: number): [number, number] {
    const bar = this.bars[index];
    return [bar.lo, bar.hi];
  }

  /** Select all points whose error falls in bars index0..index1. */
  selectBars(index0: number, index1: number): void {
    const [a, b] = index0 <= index1 ? [index0, index1] : [index1, index0];
    const ids: number[] = [];
    for (let i = a; i <= b && i < this.bars.length; i++) {
      ids.push(...this.bars[i].ids);
    }
    this.store.set(ids, "residual");
  }

  private barAt(sx: number): number | null {
    for (let i = 0; i < this.bars.length; i++) {
      const bar = this.bars[i];
      if (sx >= bar.x && sx < bar.x + bar.w) return i;
    }
    return null;
  }

  private bindMouse(): void {
    this.canvas.addEventListener("mousedown", (ev) => {
      this.dragStartBar = this.barAt(ev.offsetX);
    });
    this.canvas.addEventListener("mouseup", (ev) => {
      const end = this.barAt(ev.offsetX);
      if (this.dragStartBar === null || end === null) {
        this.store.clear("residual");
      } else {
        this.selectBars(this.dragStartBar, end);
      }
      this.dragStartBar = null;
    });
  }

  getHighlightedIds(): Set<number> {
    const out = new Set<number>();
    for (const bar of this.bars) {
      for (const id of bar.ids) {
        if (this.highlighted.has(id)) out.add(id);
      }
    }
    return out;
  }

  markCount(): number {
    return this.bars.reduce((acc, b) => acc + b.ids.length, 0);
  }

  render(): void {
    if (!this.ctx) return;
    const ctx = this.ctx;
    const h = this.canvas.height;
    const pad = 12;
    ctx.clearRect(0, 0, this.canvas.width, h);
    for (const bar of this.bars) {
      const barH = bar.height01 * (h - 2 * pad);
      ctx.fillStyle = this.style.dataColor;
      ctx.globalAlpha = this.style.alpha;
      ctx.fillRect(bar.x + 1, h - pad - barH, bar.w - 2, barH);
      const selected = bar.ids.filter((id) => this.highlighted.has(id)).length;
      if (selected > 0 && bar.ids.length > 0) {
        const selH = (selected / bar.ids.length) * barH;
        ctx.fillStyle = this.style.highlightColor;
        ctx.fillRect(bar.x + 1, h - pad - selH, bar.w - 2, selH);
      }
    }
    ctx.globalAlpha = 1;
  }
}
