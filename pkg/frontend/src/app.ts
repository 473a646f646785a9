import { Bundle } from "./types.js";
import { validateBundle } from "./validate.js";
import { SelectionStore } from "./selection.js";
import { LayoutView } from "./views/layoutView.js";
import { ResidualView } from "./views/residualView.js";
import { TourView } from "./views/tourView.js";
import { ControlPanel } from "./views/controls.js";

export interface AppHandles {
  bundle: Bundle;
  store: SelectionStore;
  layout: LayoutView;
  residual: ResidualView;
  tour: TourView;
  controls: ControlPanel;
}

/**
 * Assemble the three linked views inside `root` from a parsed bundle
 * document. A schema-violating document produces a visible error
 * banner and a null return instead of an exception.
 */
export function initApp(root: HTMLElement, raw: unknown, seed = 1): AppHandles | null {
  const doc = root.ownerDocument;
  const violations = validateBundle(raw);
  if (violations.length > 0) {
    const banner = doc.createElement("div");
    banner.className = "error-banner";
    banner.textContent = `Cannot load bundle: ${violations.join("; ")}`;
    root.appendChild(banner);
    return null;
  }
  const bundle = raw as Bundle;
  const store = new SelectionStore();

  const grid = doc.createElement("div");
  grid.className = "view-grid";
  root.appendChild(grid);
  const panels: HTMLElement[] = [];
  for (const name of ["residual-panel", "layout-panel", "tour-panel"]) {
    const panel = doc.createElement("div");
    panel.className = `panel ${name}`;
    grid.appendChild(panel);
    panels.push(panel);
  }

  const residual = new ResidualView(panels[0], bundle, store);
  const layout = new LayoutView(panels[1], bundle, store);
  const tour = new TourView(panels[2], bundle, store, {}, 380, 380, seed);

  const side = doc.createElement("div");
  side.className = "side-panel";
  root.appendChild(side);
  const controls = new ControlPanel(side, bundle, store, { layout, residual, tour });

  const info = doc.createElement("div");
  info.className = "summary-line";
  const meta = bundle.metadata;
  info.textContent =
    `n=${meta.n} p=${meta.p} m=${meta.m} | ` +
    `Error=${meta.errors.Error.toPrecision(4)} HBE=${meta.errors.HBE.toPrecision(4)}`;
  root.appendChild(info);

  return { bundle, store, layout, residual, tour, controls };
}

/** Fetch the bundle and boot the app; errors land in the banner. */
export async function loadAndStart(root: HTMLElement, url: string): Promise<AppHandles | null> {
  let raw: unknown;
  try {
    const resp = await fetch(url);
    if (!resp.ok) throw new Error(`HTTP ${resp.status}`);
    raw = await resp.json();
  } catch (err) {
    const banner = root.ownerDocument.createElement("div");
    banner.className = "error-banner";
    banner.textContent = `Cannot fetch bundle from ${url}: ${String(err)}`;
    root.appendChild(banner);
    return null;
  }
  const app = initApp(root, raw);
  if (app && typeof requestAnimationFrame === "function") {
    let last = performance.now();
    const tick = (now: number) => {
      const dt = Math.min(0.1, (now - last) / 1000);
      last = now;
      app.tour.step(dt);
      requestAnimationFrame(tick);
    };
    requestAnimationFrame(tick);
  }
  return app;
}
