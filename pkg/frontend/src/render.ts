// SVG rendering of the current quiver and the surrounding panels.  The view
// is a pure function of the server session state plus the pinned layout.

import { QuiverData, SessionState, TrackedData } from "./api.js";
import { Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

/** Arrow label under the figure convention: an arrow i->j carries the pair
 * (-eps_ji, eps_ij); equal weights collapse to a single number and weight 1
 * is drawn bare. */
export function arrowLabel(quiver: QuiverData, i: number, j: number): string {
  const out = quiver.matrix[i][j];
  const back = -quiver.matrix[j][i];
  if (out === 1 && back === 1) return "";
  if (out === back) return String(out);
  return `(${back},${out})`;
}

export function renderQuiver(
  svg: SVGElement,
  quiver: QuiverData,
  labels: string[],
  positions: Point[],
  onNodeClick: (node: number) => void,
): void {
  svg.innerHTML = "";
  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrowhead", markerWidth: "10", markerHeight: "8",
    refX: "9", refY: "4", orient: "auto",
  });
  marker.appendChild(svgEl("path", { d: "M0,0 L10,4 L0,8 z", fill: "#333" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const frozen = new Set(quiver.frozen);
  const r = 22;

  for (let i = 0; i < quiver.n; i++) {
    for (let j = 0; j < quiver.n; j++) {
      if (quiver.matrix[i][j] <= 0) continue;
      const a = positions[i];
      const b = positions[j];
      const d = Math.hypot(b.x - a.x, b.y - a.y) || 1;
      const ux = (b.x - a.x) / d;
      const uy = (b.y - a.y) / d;
      const x1 = a.x + ux * (r + 2);
      const y1 = a.y + uy * (r + 2);
      const x2 = b.x - ux * (r + 6);
      const y2 = b.y - uy * (r + 6);
      const line = svgEl("line", {
        x1: String(x1), y1: String(y1), x2: String(x2), y2: String(y2),
        stroke: "#333", "stroke-width": "1.6",
        "marker-end": "url(#arrowhead)",
        "data-arrow": `${i}-${j}`,
      });
      svg.appendChild(line);
      const label = arrowLabel(quiver, i, j);
      if (label) {
        const text = svgEl("text", {
          x: String((x1 + x2) / 2 + 8 * uy),
          y: String((y1 + y2) / 2 - 8 * ux),
          "font-size": "13", fill: "#444", "text-anchor": "middle",
          "data-arrow-label": `${i}-${j}`,
        });
        text.textContent = label;
        svg.appendChild(text);
      }
    }
  }

  for (let i = 0; i < quiver.n; i++) {
    const p = positions[i];
    const isFrozen = frozen.has(i);
    const g = svgEl("g", {
      "data-node": String(i),
      "data-frozen": isFrozen ? "1" : "0",
      class: isFrozen ? "node frozen" : "node mutable",
    });
    const shape = isFrozen
      ? svgEl("rect", {
          x: String(p.x - r), y: String(p.y - r),
          width: String(2 * r), height: String(2 * r),
          fill: "#dfe5ec", stroke: "#7a8699", "stroke-width": "2",
        })
      : svgEl("circle", {
          cx: String(p.x), cy: String(p.y), r: String(r),
          fill: "#fdf3d8", stroke: "#b08f2d", "stroke-width": "2",
        });
    g.appendChild(shape);
    const text = svgEl("text", {
      x: String(p.x), y: String(p.y + 5),
      "text-anchor": "middle", "font-size": "15",
    });
    text.textContent = labels[i];
    g.appendChild(text);
    const mult = quiver.multipliers[i];
    if (mult !== 1) {
      const sup = svgEl("text", {
        x: String(p.x + r - 4), y: String(p.y - r + 4),
        "font-size": "11", fill: "#555",
        "data-multiplier": String(i),
      });
      sup.textContent = String(mult);
      g.appendChild(sup);
    }
    // frozen nodes keep a handler so the click surfaces a warning,
    // but the controller never sends a mutation for them
    g.addEventListener("click", () => onNodeClick(i));
    svg.appendChild(g);
  }
}

export function renderBreadcrumb(el: HTMLElement, history: number[], labels: string[]): void {
  el.textContent = history.length
    ? history.map((k) => labels[k]).join(" → ")
    : "(initial seed)";
}

export function renderVariables(el: HTMLElement, state: SessionState): void {
  el.innerHTML = "";
  state.a_names.forEach((name, i) => {
    const row = document.createElement("div");
    row.className = "var-row";
    row.setAttribute("data-var", name);
    row.textContent = `${name} = ${state.a_vars[i]}`;
    el.appendChild(row);
  });
}

export function renderTracked(el: HTMLElement, tracked: TrackedData[]): void {
  el.innerHTML = "";
  tracked.forEach((t, idx) => {
    const box = document.createElement("div");
    box.className = "tracked";
    box.setAttribute("data-tracked", String(idx));

    const head = document.createElement("div");
    head.className = "tracked-head";
    const badge = document.createElement("span");
    badge.className = t.invariant ? "badge badge-green" : "badge badge-grey";
    badge.setAttribute("data-badge", String(idx));
    badge.textContent = t.invariant ? "invariant so far" : "changed";
    const title = document.createElement("span");
    title.className = "tracked-title";
    title.textContent = `${t.text}  [${t.flavor}]`;
    head.appendChild(title);
    head.appendChild(badge);
    box.appendChild(head);

    const col = document.createElement("ol");
    col.className = "tracked-values";
    col.setAttribute("start", "0");
    for (const v of t.values) {
      const li = document.createElement("li");
      li.textContent = v;
      col.appendChild(li);
    }
    box.appendChild(col);
    el.appendChild(box);
  });
}
