/**
 * Shared brush state. Only data-point IDs ever enter the selection;
 * model vertices and edges are display-only. Updates broadcast
 * synchronously to every subscribed view.
 */
export type SelectionListener = (ids: ReadonlySet<number>, source: string) => void;

export class SelectionStore {
  private ids = new Set<number>();
  private listeners: SelectionListener[] = [];
  source = "";

  subscribe(listener: SelectionListener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  get current(): ReadonlySet<number> {
    return this.ids;
  }

  set(ids: Iterable<number>, source: string): void {
    this.ids = new Set(ids);
    this.source = source;
    for (const listener of this.listeners) listener(this.ids, source);
  }

  clear(source = "clear"): void {
    this.set([], source);
  }
}
