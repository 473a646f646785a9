import { Bundle } from "../types.js";
import { SelectionStore } from "../selection.js";
import { LayoutView } from "./layoutView.js";
import { ResidualView } from "./residualView.js";
import { TourView } from "./tourView.js";

/**
 * Side panel: pause/resume, point size and alpha sliders, clear
 * selection, and (only when the bundle carries labels) per-category
 * visibility toggles. Clicking a category name selects its points, so
 * category choices propagate into the linked highlights.
 */
export class ControlPanel {
  readonly root: HTMLElement;
  private visible: Set<string> | null = null;
  private categories: string[] = [];

  constructor(
    container: HTMLElement,
    private bundle: Bundle,
    private store: SelectionStore,
    private views: { layout: LayoutView; residual: ResidualView; tour: TourView },
  ) {
    const doc = container.ownerDocument;
    this.root = doc.createElement("div");
    this.root.className = "control-panel";
    container.appendChild(this.root);

    const pause = doc.createElement("button");
    pause.className = "pause-button";
    pause.textContent = "Pause";
    pause.addEventListener("click", () => {
      if (this.views.tour.playing) {
        this.views.tour.pause();
        pause.textContent = "Resume";
      } else {
        this.views.tour.resume();
        pause.textContent = "Pause";
      }
    });
    this.root.appendChild(pause);

    const clear = doc.createElement("button");
    clear.className = "clear-button";
    clear.textContent = "Clear selection";
    clear.addEventListener("click", () => this.store.clear("controls"));
    this.root.appendChild(clear);

    this.addSlider(doc, "Point size", 1, 8, this.views.layout.style.pointSize, (v) => {
      this.views.layout.style.pointSize = v;
      this.views.tour.style.pointSize = v;
      this.redraw();
    });
    this.addSlider(doc, "Opacity", 0.05, 1, this.views.layout.style.alpha, (v) => {
      this.views.layout.style.alpha = v;
      this.views.residual.style.alpha = v;
      this.views.tour.style.alpha = v;
      this.redraw();
    });

    const labels = new Set<string>();
    let labeled = false;
    for (const pt of bundle.points) {
      if (pt.label !== undefined && pt.label !== "") labeled = true;
      labels.add(pt.label ?? "");
    }
    if (labeled && labels.size > 1) {
      this.categories = [...labels].sort();
      this.visible = new Set(this.categories);
      this.buildCategoryPanel(doc);
    }
  }

  private addSlider(
    doc: Document,
    label: string,
    min: number,
    max: number,
    value: number,
    onChange: (v: number) => void,
  ): void {
    const wrap = doc.createElement("label");
    wrap.textContent = label;
    const slider = doc.createElement("input");
    slider.type = "range";
    slider.min = String(min);
    slider.max = String(max);
    slider.step = "0.05";
    slider.value = String(value);
    slider.addEventListener("input", () => onChange(Number(slider.value)));
    wrap.appendChild(slider);
    this.root.appendChild(wrap);
  }

  private buildCategoryPanel(doc: Document): void {
    const panel = doc.createElement("div");
    panel.className = "category-panel";
    for (const cat of this.categories) {
      const row = doc.createElement("div");
      row.className = "category-row";
      const box = doc.createElement("input");
      box.type = "checkbox";
      box.checked = true;
      box.dataset.category = cat;
      box.addEventListener("change", () => {
        if (box.checked) this.visible!.add(cat);
        else this.visible!.delete(cat);
        this.applyVisibility();
      });
      const name = doc.createElement("span");
      name.textContent = cat || "(unlabeled)";
      name.className = "category-name";
      // selecting by category propagates into the linked highlights
      name.addEventListener("click", () => {
        const ids = this.bundle.points
          .filter((p) => (p.label ?? "") === cat)
          .map((p) => p.ID);
        this.store.set(ids, "controls");
      });
      row.appendChild(box);
      row.appendChild(name);
      panel.appendChild(row);
    }
    this.root.appendChild(panel);
  }

  hasCategoryPanel(): boolean {
    return this.root.querySelector(".category-panel") !== null;
  }

  setCategoryVisible(cat: string, visible: boolean): void {
    if (this.visible === null) return;
    if (visible) this.visible.add(cat);
    else this.visible.delete(cat);
    this.applyVisibility();
  }

  private applyVisibility(): void {
    const labels = this.visible === null ? null : new Set(this.visible);
    this.views.layout.setVisibleLabels(labels);
    this.views.residual.setVisibleLabels(labels);
    this.views.tour.setVisibleLabels(labels);
  }

  private redraw(): void {
    this.views.layout.render();
    this.views.residual.render();
    this.views.tour.render(this.views.tour.currentBasis());
  }
}
