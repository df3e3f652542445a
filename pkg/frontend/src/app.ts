// Controller: owns the session, pins the layout, and re-renders everything
// from server state after each round trip.  Optimistic updates are forbidden
// by design; the exact-arithmetic truth lives on the server.

import { ApiError, ExplorerApi, SessionState } from "./api.js";
import { computeLayout, Point } from "./layout.js";
import {
  renderBreadcrumb,
  renderQuiver,
  renderTracked,
  renderVariables,
} from "./render.js";

export interface AppElements {
  svg: SVGElement;
  breadcrumb: HTMLElement;
  variables: HTMLElement;
  tracked: HTMLElement;
  toast: HTMLElement;
  undoButton: HTMLElement;
}

export class ExplorerApp {
  state: SessionState | null = null;
  private positions: Point[] = [];
  private busy = false;

  constructor(
    private api: ExplorerApi,
    private els: AppElements,
    private width = 640,
    private height = 480,
  ) {
    this.els.undoButton.addEventListener("click", () => {
      void this.undo();
    });
  }

  async start(catalogName: string): Promise<void> {
    this.state = await this.api.createSession(catalogName);
    // layout is computed once and pinned; later renders reuse it
    this.positions = computeLayout(this.state.quiver, this.width, this.height);
    this.render();
  }

  /** Reattach to an existing session (page reload); the view is a pure
   * function of the server state plus the deterministic layout. */
  async attach(sessionId: string): Promise<void> {
    this.state = await this.api.getSession(sessionId);
    this.positions = computeLayout(this.state.quiver, this.width, this.height);
    this.render();
  }

  async clickNode(node: number): Promise<void> {
    if (!this.state || this.busy) return;
    if (this.state.quiver.frozen.includes(node)) {
      this.showToast(`node ${this.state.labels[node]} is frozen`);
      return;
    }
    this.busy = true;
    try {
      this.state = await this.api.mutate(this.state.id, node);
      this.render();
    } catch (err) {
      this.showToast(err instanceof ApiError ? err.message : String(err));
    } finally {
      this.busy = false;
    }
  }

  async undo(): Promise<void> {
    if (!this.state || this.busy) return;
    this.busy = true;
    try {
      this.state = await this.api.undo(this.state.id);
      this.render();
    } catch (err) {
      this.showToast(err instanceof ApiError ? err.message : String(err));
    } finally {
      this.busy = false;
    }
  }

  async track(text: string, flavor: string): Promise<boolean> {
    if (!this.state) return false;
    try {
      await this.api.track(this.state.id, text, flavor);
      this.state = await this.api.getSession(this.state.id);
      this.render();
      return true;
    } catch (err) {
      this.showToast(err instanceof ApiError ? err.message : String(err));
      return false;
    }
  }

  render(): void {
    if (!this.state) return;
    renderQuiver(
      this.els.svg,
      this.state.quiver,
      this.state.labels,
      this.positions,
      (node) => void this.clickNode(node),
    );
    renderBreadcrumb(this.els.breadcrumb, this.state.history, this.state.labels);
    renderVariables(this.els.variables, this.state);
    renderTracked(this.els.tracked, this.state.tracked);
  }

  showToast(message: string): void {
    this.els.toast.textContent = message;
    this.els.toast.setAttribute("data-visible", "1");
  }
}

export function mountExplorer(root: HTMLElement, api: ExplorerApi): ExplorerApp {
  root.innerHTML = `
    <div class="toolbar">
      <button data-role="undo">undo</button>
      <span class="toast" data-role="toast"></span>
    </div>
    <svg data-role="quiver" width="640" height="480"></svg>
    <div class="breadcrumb" data-role="breadcrumb"></div>
    <div class="variables" data-role="variables"></div>
    <form class="track-form" data-role="track-form">
      <input name="fn" placeholder="(a1^2 + a2^2 + a3^2)/(a1*a2*a3)" size="40">
      <select name="flavor"><option value="a">a</option><option value="x">x</option></select>
      <button type="submit">track</button>
    </form>
    <div class="tracked-panel" data-role="tracked"></div>
  `;
  const pick = (role: string) =>
    root.querySelector(`[data-role="${role}"]`) as HTMLElement;
  const app = new ExplorerApp(api, {
    svg: pick("quiver") as unknown as SVGElement,
    breadcrumb: pick("breadcrumb"),
    variables: pick("variables"),
    tracked: pick("tracked"),
    toast: pick("toast"),
    undoButton: pick("undo"),
  });
  const form = pick("track-form") as HTMLFormElement;
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const input = form.querySelector("input[name=fn]") as HTMLInputElement;
    const flavor = (form.querySelector("select[name=flavor]") as HTMLSelectElement).value;
    if (input.value.trim()) void app.track(input.value.trim(), flavor);
  });
  return app;
}
