/** Browser entry point: SVG quiver, click-to-mutate, history strip, fg panel. */

import { ServerError, SessionClient } from "./client.js";
import type { MatrixJson, SessionState } from "./types.js";
import {
  exportSession,
  historyModel,
  panelModel,
  quiverModel,
} from "./view.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const DEFAULT_MATRIX: MatrixJson = {
  labels: [1, 2, 3],
  rows: [
    [0, -1, 0],
    [1, 0, -1],
    [0, 2, 0],
  ],
};

class App {
  private client: SessionClient;
  private state: SessionState | null = null;
  private initialB: MatrixJson | null = null;
  private pending = false;

  constructor(private root: HTMLElement, baseUrl: string) {
    this.client = new SessionClient(baseUrl);
  }

  async start(matrix: MatrixJson): Promise<void> {
    this.state = await this.client.createFromMatrix(matrix);
    this.initialB = this.state.B;
    this.render();
  }

  private async run(action: () => Promise<SessionState>): Promise<void> {
    if (this.pending || !this.state) {
      return;
    }
    this.pending = true;
    this.render();
    try {
      this.state = await action();
      this.setStatus("");
    } catch (err) {
      if (err instanceof ServerError) {
        this.setStatus(`${err.code}: ${JSON.stringify(err.witness)}`);
      } else {
        this.setStatus(String(err));
      }
    } finally {
      this.pending = false;
      this.render();
    }
  }

  private setStatus(text: string): void {
    const el = this.root.querySelector<HTMLElement>(".status");
    if (el) {
      el.textContent = text;
    }
  }

  private mutate(k: string): void {
    void this.run(() => this.client.mutate(this.state!.id, coerceLabel(this.state!, k)));
  }

  private undo(): void {
    void this.run(() => this.client.undo(this.state!.id));
  }

  private async jumpTo(step: number): Promise<void> {
    // replay the prefix by undoing down to the requested length
    while (this.state && this.state.history.length > step && !this.pending) {
      await this.run(() => this.client.undo(this.state!.id));
    }
  }

  private download(): void {
    if (!this.state || !this.initialB) {
      return;
    }
    const data = JSON.stringify(exportSession(this.initialB, this.state), null, 2);
    const blob = new Blob([data], { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = `session-${this.state.id}.json`;
    a.click();
    URL.revokeObjectURL(a.href);
  }

  private render(): void {
    if (!this.state) {
      return;
    }
    this.renderQuiver();
    this.renderPanel();
    this.renderHistory();
  }

  private renderQuiver(): void {
    const svg = this.root.querySelector<SVGSVGElement>("svg.quiver")!;
    svg.innerHTML = "";
    const model = quiverModel(this.state!);
    const pos = new Map(model.vertices.map((v) => [v.id, v]));
    for (const e of model.edges) {
      const a = pos.get(e.from)!;
      const b = pos.get(e.to)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const len = Math.hypot(dx, dy) || 1;
      const nx = -dy / len;
      const ny = dx / len;
      for (let s = 0; s < e.strokes; s++) {
        const off = e.strokes === 1 ? 0 : (s === 0 ? 1.2 : -1.2);
        const line = document.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", `${a.x + nx * off}`);
        line.setAttribute("y1", `${a.y + ny * off}`);
        line.setAttribute("x2", `${b.x + nx * off - (dx / len) * 7}`);
        line.setAttribute("y2", `${b.y + ny * off - (dy / len) * 7}`);
        line.setAttribute("class", "edge");
        line.setAttribute("marker-end", "url(#arrowhead)");
        svg.appendChild(line);
      }
      if (e.label) {
        const t = document.createElementNS(SVG_NS, "text");
        t.setAttribute("x", `${(a.x + b.x) / 2 + nx * 4}`);
        t.setAttribute("y", `${(a.y + b.y) / 2 + ny * 4}`);
        t.setAttribute("class", "edge-label");
        t.textContent = e.label;
        svg.appendChild(t);
      }
    }
    for (const v of model.vertices) {
      const g = document.createElementNS(SVG_NS, "g");
      g.setAttribute("class", v.mutable && !this.pending ? "vertex" : "vertex disabled");
      const c = document.createElementNS(SVG_NS, "circle");
      c.setAttribute("cx", `${v.x}`);
      c.setAttribute("cy", `${v.y}`);
      c.setAttribute("r", v.groupOrder > 1 ? "6" : "4");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = v.mutable
        ? `mutate at ${v.id}`
        : `vertex ${v.id} has a 2-cycle through it; mutation undefined`;
      g.appendChild(title);
      g.appendChild(c);
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", `${v.x}`);
      label.setAttribute("y", `${v.y - 9}`);
      label.setAttribute("class", "vertex-label");
      label.textContent = v.groupOrder > 1 ? `${v.id} (|Γ|=${v.groupOrder})` : `${v.id}`;
      g.appendChild(label);
      if (v.mutable) {
        g.addEventListener("click", () => this.mutate(v.id));
      }
      svg.appendChild(g);
    }
  }

  private renderPanel(): void {
    const panel = this.root.querySelector<HTMLElement>(".fg-panel")!;
    panel.innerHTML = "";
    for (const row of panelModel(this.state!)) {
      const div = document.createElement("div");
      div.className = "fg-row";
      div.dataset.vertex = row.vertex;
      div.innerHTML = `<span class="v">vertex ${row.vertex}</span>
        <span class="f">F̌ = ${row.fText}</span>
        <span class="g">ǧ = ${row.gText}</span>`;
      panel.appendChild(div);
    }
  }

  private renderHistory(): void {
    const strip = this.root.querySelector<HTMLElement>(".history")!;
    strip.innerHTML = "";
    const model = historyModel(this.state!);
    const start = document.createElement("button");
    start.textContent = "•";
    start.title = "jump to the initial seed";
    start.addEventListener("click", () => void this.jumpTo(0));
    strip.appendChild(start);
    model.steps.forEach((s, i) => {
      const b = document.createElement("button");
      b.textContent = `μ${s}`;
      b.title = `jump to step ${i + 1}`;
      b.addEventListener("click", () => void this.jumpTo(i + 1));
      strip.appendChild(b);
    });
    const undo = this.root.querySelector<HTMLButtonElement>("button.undo")!;
    undo.disabled = !model.canUndo || this.pending;
    const exp = this.root.querySelector<HTMLButtonElement>("button.export")!;
    exp.disabled = this.pending;
  }

  wire(): void {
    this.root.querySelector<HTMLButtonElement>("button.undo")!.addEventListener("click", () => this.undo());
    this.root.querySelector<HTMLButtonElement>("button.export")!.addEventListener("click", () => this.download());
  }
}

function coerceLabel(state: SessionState, k: string): number | string {
  for (const v of state.species.vertices) {
    if (String(v.id) === k) {
      return v.id;
    }
  }
  return k;
}

export function boot(): void {
  const root = document.getElementById("app")!;
  const base = (window as unknown as { API_BASE?: string }).API_BASE ?? "http://127.0.0.1:8137";
  const app = new App(root, base);
  app.wire();
  void app.start(DEFAULT_MATRIX);
}

if (typeof document !== "undefined") {
  boot();
}
