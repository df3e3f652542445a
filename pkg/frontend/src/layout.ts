// Node placement.  Positions are computed once per session (circle start,
// then a few spring relaxation rounds) and pinned afterwards so mutations
// read as local changes to the arrows, not as a reshuffled picture.

import { QuiverData } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export function computeLayout(
  quiver: QuiverData,
  width: number,
  height: number,
): Point[] {
  const n = quiver.n;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 50;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    pts.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  // a few deterministic spring steps pull adjacent nodes together
  for (let round = 0; round < 30; round++) {
    const force: Point[] = pts.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        if (i === j) continue;
        const dx = pts[j].x - pts[i].x;
        const dy = pts[j].y - pts[i].y;
        const d = Math.max(20, Math.hypot(dx, dy));
        const connected = quiver.matrix[i][j] !== 0 || quiver.matrix[j][i] !== 0;
        const target = connected ? 170 : 260;
        const k = connected ? 0.02 : 0.008;
        const pull = k * (d - target);
        force[i].x += (pull * dx) / d;
        force[i].y += (pull * dy) / d;
      }
    }
    for (let i = 0; i < n; i++) {
      pts[i].x = Math.min(width - 40, Math.max(40, pts[i].x + force[i].x));
      pts[i].y = Math.min(height - 40, Math.max(40, pts[i].y + force[i].y));
    }
  }
  return pts;
}
